// Copyright (c) 2026 The voxsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOXSEL_EMBEDDING_HPP_
#define VOXSEL_EMBEDDING_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voxsel/common.hpp"

namespace voxsel {

// One utterance-level speaker embedding (x-vector). Values are stored as
// 32-bit floats, matching the on-disk binary format; all statistics are
// accumulated in double.
struct UtteranceRecord {
  std::string speaker_id;
  std::string utterance_id;
  std::vector<float> embedding;
  std::optional<double> duration_seconds;
  // Free-form metadata tag (e.g. a gender label) used only for grouped
  // score histograms. Carried by the jsonl format; absent in xvecbin.
  std::optional<std::string> tag;
};

enum class PoolFormat { kJsonl, kXvecbin };

// Infers kXvecbin for a ".xvb" extension, kJsonl otherwise.
PoolFormat pool_format_from_path(const std::filesystem::path& path);

// Immutable after load; concurrent reads are safe.
class EmbeddingPool {
 public:
  static EmbeddingPool load(const std::filesystem::path& path, PoolFormat format);
  static EmbeddingPool from_records(std::vector<UtteranceRecord> records);

  void save(const std::filesystem::path& path, PoolFormat format) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return records_.size(); }
  std::span<const UtteranceRecord> records() const { return records_; }
  const UtteranceRecord& record(std::size_t i) const { return records_[i]; }

  std::size_t num_speakers() const { return speaker_index_.size(); }
  bool has_speaker(std::string_view speaker_id) const;
  // Record indices of one speaker's utterances, in load order.
  std::span<const std::uint32_t> utterances_of(std::string_view speaker_id) const;
  // Speaker ids in lexicographic order.
  std::vector<std::string> speaker_ids() const;

 private:
  EmbeddingPool() = default;

  std::size_t dimension_ = 0;
  std::vector<UtteranceRecord> records_;
  std::map<std::string, std::vector<std::uint32_t>, std::less<>> speaker_index_;
};

// Componentwise arithmetic mean of one speaker's utterance embeddings
// (u_n). Compensated summation.
Vec speaker_mean(const EmbeddingPool& pool, std::string_view speaker_id);

// Mean x-vector over a set of records (x_Target for the target set).
Vec target_embedding(std::span<const UtteranceRecord> records);

// sigma_n: sqrt of the average squared Euclidean distance between each of
// the speaker's utterance embeddings and their mean.
double speaker_divergence(const EmbeddingPool& pool, std::string_view speaker_id);

// ||x - u||_2 for a single utterance against a (speaker) mean.
double utterance_distance(std::span<const float> embedding, std::span<const double> mean);

}  // namespace voxsel

#endif  // VOXSEL_EMBEDDING_HPP_
