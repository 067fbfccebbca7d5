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

#include "voxsel/embedding.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace voxsel {
namespace {

using nlohmann::json;

constexpr char kXvecbinMagic[4] = {'X', 'V', 'B', '1'};

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

void validate_record(const UtteranceRecord& rec, std::size_t index) {
  std::string where = "record " + std::to_string(index + 1);
  if (rec.speaker_id.empty()) fail(where + ": empty speaker id");
  if (rec.utterance_id.empty()) fail(where + ": empty utterance id");
  if (rec.embedding.empty()) fail(where + ": empty embedding");
  if (!all_finite(std::span<const float>(rec.embedding)))
    fail(where + ": embedding contains NaN or Inf");
  if (rec.duration_seconds && (!std::isfinite(*rec.duration_seconds) ||
                               *rec.duration_seconds < 0.0))
    fail(where + ": negative or non-finite duration");
}

UtteranceRecord parse_jsonl_record(const std::string& line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    fail("line " + std::to_string(line_no) + ": malformed json (" + e.what() + ")");
  }
  if (!obj.is_object()) fail("line " + std::to_string(line_no) + ": not a json object");

  UtteranceRecord rec;
  try {
    rec.speaker_id = obj.at("speaker").get<std::string>();
    rec.utterance_id = obj.at("utterance").get<std::string>();
    const auto& emb = obj.at("embedding");
    if (!emb.is_array()) fail("line " + std::to_string(line_no) + ": embedding is not an array");
    rec.embedding.reserve(emb.size());
    for (const auto& v : emb) rec.embedding.push_back(v.get<float>());
    if (obj.contains("duration")) rec.duration_seconds = obj.at("duration").get<double>();
    if (obj.contains("tag")) rec.tag = obj.at("tag").get<std::string>();
  } catch (const json::exception& e) {
    fail("line " + std::to_string(line_no) + ": malformed record (" + e.what() + ")");
  }
  return rec;
}

std::vector<UtteranceRecord> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open pool file: " + path.string());

  std::vector<UtteranceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    records.push_back(parse_jsonl_record(line, line_no));
  }
  return records;
}

template <typename T>
T read_le(std::istream& in, const char* what) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    fail(std::string("truncated xvecbin file while reading ") + what);
  // Little-endian on disk.
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  T out;
  if constexpr (std::is_same_v<T, float>) {
    std::uint32_t b32 = static_cast<std::uint32_t>(bits);
    std::memcpy(&out, &b32, sizeof(out));
  } else {
    out = static_cast<T>(bits);
  }
  return out;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, float>) {
    std::uint32_t b32;
    std::memcpy(&b32, &value, sizeof(b32));
    bits = b32;
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

std::string read_string16(std::istream& in, const char* what) {
  auto len = read_le<std::uint16_t>(in, what);
  std::string s(len, '\0');
  if (len > 0 && !in.read(s.data(), len))
    fail(std::string("truncated xvecbin file while reading ") + what);
  return s;
}

std::vector<UtteranceRecord> load_xvecbin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open pool file: " + path.string());

  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kXvecbinMagic, 4) != 0)
    fail("not an xvecbin file (bad magic): " + path.string());

  auto dim = read_le<std::uint32_t>(in, "dimension");
  auto count = read_le<std::uint32_t>(in, "record count");
  if (dim == 0) fail("xvecbin header declares dimension 0");

  std::vector<UtteranceRecord> records;
  records.reserve(count);
  for (std::uint32_t r = 0; r < count; ++r) {
    UtteranceRecord rec;
    rec.speaker_id = read_string16(in, "speaker id");
    rec.utterance_id = read_string16(in, "utterance id");
    rec.embedding.resize(dim);
    for (std::uint32_t d = 0; d < dim; ++d)
      rec.embedding[d] = read_le<float>(in, "embedding value");
    records.push_back(std::move(rec));
  }
  return records;
}

void save_jsonl(const EmbeddingPool& pool, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write pool file: " + path.string());
  for (const auto& rec : pool.records()) {
    json obj;
    obj["speaker"] = rec.speaker_id;
    obj["utterance"] = rec.utterance_id;
    obj["embedding"] = rec.embedding;
    if (rec.duration_seconds) obj["duration"] = *rec.duration_seconds;
    if (rec.tag) obj["tag"] = *rec.tag;
    out << obj.dump() << '\n';
  }
}

void save_xvecbin(const EmbeddingPool& pool, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write pool file: " + path.string());
  out.write(kXvecbinMagic, 4);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(pool.dimension()));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(pool.size()));
  for (const auto& rec : pool.records()) {
    if (rec.speaker_id.size() > std::numeric_limits<std::uint16_t>::max() ||
        rec.utterance_id.size() > std::numeric_limits<std::uint16_t>::max())
      fail("id too long for xvecbin format: " + rec.speaker_id + "/" + rec.utterance_id);
    write_le<std::uint16_t>(out, static_cast<std::uint16_t>(rec.speaker_id.size()));
    out.write(rec.speaker_id.data(), static_cast<std::streamsize>(rec.speaker_id.size()));
    write_le<std::uint16_t>(out, static_cast<std::uint16_t>(rec.utterance_id.size()));
    out.write(rec.utterance_id.data(), static_cast<std::streamsize>(rec.utterance_id.size()));
    for (float v : rec.embedding) write_le<float>(out, v);
  }
  if (!out) fail("write failed: " + path.string());
}

}  // namespace

PoolFormat pool_format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".xvb" ? PoolFormat::kXvecbin : PoolFormat::kJsonl;
}

EmbeddingPool EmbeddingPool::from_records(std::vector<UtteranceRecord> records) {
  if (records.empty()) fail("empty pool");

  EmbeddingPool pool;
  pool.dimension_ = records.front().embedding.size();
  pool.records_ = std::move(records);

  for (std::size_t i = 0; i < pool.records_.size(); ++i) {
    const auto& rec = pool.records_[i];
    validate_record(rec, i);
    if (rec.embedding.size() != pool.dimension_)
      fail("dimension mismatch at record " + std::to_string(i + 1) + ": expected " +
           std::to_string(pool.dimension_) + ", got " + std::to_string(rec.embedding.size()));
    auto [it, _] = pool.speaker_index_.try_emplace(rec.speaker_id);
    it->second.push_back(static_cast<std::uint32_t>(i));
  }

  // Duplicate (speaker, utterance) keys.
  for (const auto& [speaker, idxs] : pool.speaker_index_) {
    std::map<std::string_view, std::size_t> seen;
    for (auto i : idxs) {
      auto [it, inserted] = seen.try_emplace(pool.records_[i].utterance_id, i);
      if (!inserted)
        fail("duplicate (speaker, utterance) key at record " + std::to_string(i + 1) + ": " +
             speaker + "/" + pool.records_[i].utterance_id);
    }
  }
  return pool;
}

EmbeddingPool EmbeddingPool::load(const std::filesystem::path& path, PoolFormat format) {
  std::vector<UtteranceRecord> records = format == PoolFormat::kJsonl
                                             ? load_jsonl(path)
                                             : load_xvecbin(path);
  if (records.empty()) fail("empty pool: " + path.string());
  return from_records(std::move(records));
}

void EmbeddingPool::save(const std::filesystem::path& path, PoolFormat format) const {
  if (format == PoolFormat::kJsonl)
    save_jsonl(*this, path);
  else
    save_xvecbin(*this, path);
}

bool EmbeddingPool::has_speaker(std::string_view speaker_id) const {
  return speaker_index_.find(speaker_id) != speaker_index_.end();
}

std::span<const std::uint32_t> EmbeddingPool::utterances_of(std::string_view speaker_id) const {
  auto it = speaker_index_.find(speaker_id);
  if (it == speaker_index_.end())
    fail("unknown speaker id: " + std::string(speaker_id));
  return it->second;
}

std::vector<std::string> EmbeddingPool::speaker_ids() const {
  std::vector<std::string> ids;
  ids.reserve(speaker_index_.size());
  for (const auto& [speaker, _] : speaker_index_) ids.push_back(speaker);
  return ids;
}

Vec speaker_mean(const EmbeddingPool& pool, std::string_view speaker_id) {
  auto idxs = pool.utterances_of(speaker_id);
  std::vector<CompensatedSum> sums(pool.dimension());
  for (auto i : idxs)
    for (std::size_t d = 0; d < pool.dimension(); ++d)
      sums[d].add(pool.record(i).embedding[d]);
  Vec mean(pool.dimension());
  for (std::size_t d = 0; d < mean.size(); ++d)
    mean[d] = sums[d].value() / static_cast<double>(idxs.size());
  return mean;
}

Vec target_embedding(std::span<const UtteranceRecord> records) {
  if (records.empty()) fail("target set is empty");
  std::size_t dim = records.front().embedding.size();
  std::vector<CompensatedSum> sums(dim);
  for (const auto& rec : records) {
    if (rec.embedding.size() != dim)
      fail("dimension mismatch in target set: expected " + std::to_string(dim) + ", got " +
           std::to_string(rec.embedding.size()));
    for (std::size_t d = 0; d < dim; ++d) sums[d].add(rec.embedding[d]);
  }
  Vec mean(dim);
  for (std::size_t d = 0; d < dim; ++d)
    mean[d] = sums[d].value() / static_cast<double>(records.size());
  return mean;
}

double speaker_divergence(const EmbeddingPool& pool, std::string_view speaker_id) {
  auto idxs = pool.utterances_of(speaker_id);
  Vec mean = speaker_mean(pool, speaker_id);
  CompensatedSum acc;
  for (auto i : idxs)
    acc.add(squared_l2_distance(pool.record(i).embedding, mean));
  return std::sqrt(acc.value() / static_cast<double>(idxs.size()));
}

double utterance_distance(std::span<const float> embedding, std::span<const double> mean) {
  if (embedding.size() != mean.size())
    fail("dimension mismatch in utterance distance");
  return std::sqrt(squared_l2_distance(embedding, mean));
}

}  // namespace voxsel
