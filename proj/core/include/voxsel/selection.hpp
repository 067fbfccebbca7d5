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

#ifndef VOXSEL_SELECTION_HPP_
#define VOXSEL_SELECTION_HPP_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "voxsel/common.hpp"
#include "voxsel/embedding.hpp"
#include "voxsel/plda.hpp"

namespace voxsel {

// The three relational data-selection criteria. DC1 ranks by the raw PLDA
// score; DC2 divides the temperature-sigmoid score by the speaker
// divergence; DC3 additionally divides by the utterance distance to the
// speaker mean.
enum class Criterion { kDc1, kDc2, kDc3 };

std::string to_string(Criterion c);
Criterion criterion_from_string(std::string_view s);

struct SelectionConfig {
  Criterion criterion = Criterion::kDc3;
  std::size_t k = 85;
  double alpha = 0.1;      // regularizer weight
  double sigmoid_c = 0.5;  // temperature constant
  double epsilon = 1e-6;   // divergence floor before exponentiation

  void validate() const;
};

// Temperature sigmoid 1 / (1 + c * exp(-x)). Total and saturation-safe:
// approaches 1 for large x and 0 for very negative x without overflow.
double sigmoid_score(double plda_raw, double c);

struct ScoredUtterance {
  std::string speaker_id;
  std::string utterance_id;
  double plda_raw = 0.0;
  double plda_sigmoid = 0.0;
  double sigma_n = 0.0;       // speaker divergence
  double utt_distance = 0.0;  // ||x_{n,i} - u_n||_2
  double final_score = 0.0;
  std::optional<std::string> tag;
};

// Evaluates the configured criterion; ids and tag are left for the caller.
ScoredUtterance score_utterance(const SelectionConfig& cfg, double plda_raw,
                                double sigma_n, double utt_distance);

struct SelectionStats {
  std::size_t num_speakers = 0;
  // Speakers contributing exactly one selected utterance.
  std::size_t num_suspected = 0;
  // Percentages vs. a reference selection; absent when no reference given.
  std::optional<double> utterance_overlap_pct;
  std::optional<double> speaker_overlap_pct;
};

struct SelectionReport {
  std::vector<ScoredUtterance> ranked;    // descending final_score
  std::vector<ScoredUtterance> selected;  // first min(k, pool size) of ranked
  SelectionStats stats;
  double threshold_score = 0.0;  // final_score of the last selected item
};

// Scores every non-excluded utterance in the pool against the target and
// ranks descending by final_score with ties broken by (speaker_id,
// utterance_id) ascending. Deterministic for any thread count.
SelectionReport rank_pool(const EmbeddingPool& pool, const PldaModel& model,
                          const Vec& target, const SelectionConfig& cfg,
                          const std::set<std::string>& exclude_speakers = {},
                          unsigned threads = 0);

SelectionStats selection_stats(std::span<const ScoredUtterance> selected,
                               std::span<const ScoredUtterance>* reference = nullptr);

enum class HistogramGroupBy { kNone, kSpeakerGenderTag };

struct HistogramTable {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t bins = 0;
  struct Row {
    std::string group;  // "all" when ungrouped; records without a tag go to "untagged"
    std::vector<std::size_t> counts;
  };
  std::vector<Row> rows;  // sorted by group name

  std::string to_csv() const;  // data rows only; callers may prepend comments
};

// Equal-width bins over [min, max] of plda_raw.
HistogramTable score_histogram(std::span<const ScoredUtterance> ranked, std::size_t bins,
                               HistogramGroupBy group_by = HistogramGroupBy::kNone);

}  // namespace voxsel

#endif  // VOXSEL_SELECTION_HPP_
