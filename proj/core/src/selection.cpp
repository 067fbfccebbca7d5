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

#include "voxsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "voxsel/parallel.hpp"

namespace voxsel {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

bool ranked_before(const ScoredUtterance& a, const ScoredUtterance& b) {
  if (a.final_score != b.final_score) return a.final_score > b.final_score;
  if (a.speaker_id != b.speaker_id) return a.speaker_id < b.speaker_id;
  return a.utterance_id < b.utterance_id;
}

}  // namespace

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::kDc1: return "dc1";
    case Criterion::kDc2: return "dc2";
    case Criterion::kDc3: return "dc3";
  }
  return "dc3";
}

Criterion criterion_from_string(std::string_view s) {
  if (s == "dc1" || s == "DC1") return Criterion::kDc1;
  if (s == "dc2" || s == "DC2") return Criterion::kDc2;
  if (s == "dc3" || s == "DC3") return Criterion::kDc3;
  fail("unknown criterion: " + std::string(s) + " (expected dc1, dc2, or dc3)");
}

void SelectionConfig::validate() const {
  if (k < 1) fail("selection k must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be finite and >= 0");
  if (!(sigmoid_c > 0.0) || !std::isfinite(sigmoid_c)) fail("sigmoid_c must be finite and > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon must be finite and > 0");
}

double sigmoid_score(double plda_raw, double c) {
  if (plda_raw >= 0.0) return 1.0 / (1.0 + c * std::exp(-plda_raw));
  // exp(plda_raw) underflows to 0 for very negative scores, giving 0.
  double e = std::exp(plda_raw);
  return e / (e + c);
}

ScoredUtterance score_utterance(const SelectionConfig& cfg, double plda_raw,
                                double sigma_n, double utt_distance) {
  ScoredUtterance s;
  s.plda_raw = plda_raw;
  s.plda_sigmoid = sigmoid_score(plda_raw, cfg.sigmoid_c);
  s.sigma_n = sigma_n;
  s.utt_distance = utt_distance;
  switch (cfg.criterion) {
    case Criterion::kDc1:
      s.final_score = plda_raw;
      break;
    case Criterion::kDc2:
      s.final_score = s.plda_sigmoid / std::pow(std::max(sigma_n, cfg.epsilon), cfg.alpha);
      break;
    case Criterion::kDc3:
      s.final_score =
          s.plda_sigmoid /
          std::pow(std::max(sigma_n * utt_distance, cfg.epsilon), cfg.alpha);
      break;
  }
  return s;
}

SelectionReport rank_pool(const EmbeddingPool& pool, const PldaModel& model,
                          const Vec& target, const SelectionConfig& cfg,
                          const std::set<std::string>& exclude_speakers,
                          unsigned threads) {
  cfg.validate();
  if (target.size() != pool.dimension())
    fail("target dimension " + std::to_string(target.size()) +
         " does not match pool dimension " + std::to_string(pool.dimension()));

  std::vector<std::uint32_t> candidates;
  candidates.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (!exclude_speakers.contains(pool.record(i).speaker_id))
      candidates.push_back(static_cast<std::uint32_t>(i));
  if (candidates.empty()) fail("pool is empty after speaker exclusions");

  // Per-speaker statistics first, over ALL of a speaker's pool utterances.
  struct SpeakerStats {
    Vec mean;
    double sigma = 0.0;
  };
  std::vector<std::string> speakers = pool.speaker_ids();
  std::unordered_map<std::string, SpeakerStats> stats_by_speaker(speakers.size());
  for (const auto& sp : speakers) stats_by_speaker.emplace(sp, SpeakerStats{});
  parallel_for(speakers.size(), threads, [&](std::size_t i) {
    SpeakerStats& st = stats_by_speaker.at(speakers[i]);
    st.mean = speaker_mean(pool, speakers[i]);
    auto idxs = pool.utterances_of(speakers[i]);
    CompensatedSum acc;
    for (auto r : idxs) acc.add(squared_l2_distance(pool.record(r).embedding, st.mean));
    st.sigma = std::sqrt(acc.value() / static_cast<double>(idxs.size()));
  });

  PreparedEmbedding prepared_target = prepare(model, std::span<const double>(target));

  std::vector<ScoredUtterance> ranked(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    const UtteranceRecord& rec = pool.record(candidates[i]);
    const SpeakerStats& st = stats_by_speaker.at(rec.speaker_id);
    PreparedEmbedding prepared = prepare(model, std::span<const float>(rec.embedding));
    double raw = plda_score(model, prepared, prepared_target);
    double dist = utterance_distance(rec.embedding, st.mean);
    ScoredUtterance s = score_utterance(cfg, raw, st.sigma, dist);
    s.speaker_id = rec.speaker_id;
    s.utterance_id = rec.utterance_id;
    s.tag = rec.tag;
    ranked[i] = std::move(s);
  });

  std::sort(ranked.begin(), ranked.end(), ranked_before);

  SelectionReport report;
  report.ranked = std::move(ranked);
  std::size_t n_selected = std::min(cfg.k, report.ranked.size());
  report.selected.assign(report.ranked.begin(),
                         report.ranked.begin() + static_cast<std::ptrdiff_t>(n_selected));
  report.threshold_score = report.selected.back().final_score;
  report.stats = selection_stats(report.selected);
  return report;
}

SelectionStats selection_stats(std::span<const ScoredUtterance> selected,
                               std::span<const ScoredUtterance>* reference) {
  if (selected.empty()) fail("selection_stats requires a nonempty selection");

  std::map<std::string_view, std::size_t> per_speaker;
  for (const auto& s : selected) ++per_speaker[s.speaker_id];

  SelectionStats stats;
  stats.num_speakers = per_speaker.size();
  for (const auto& [_, count] : per_speaker)
    if (count == 1) ++stats.num_suspected;

  if (reference != nullptr) {
    std::set<std::pair<std::string_view, std::string_view>> ref_utts;
    std::set<std::string_view> ref_speakers;
    for (const auto& r : *reference) {
      ref_utts.emplace(r.speaker_id, r.utterance_id);
      ref_speakers.insert(r.speaker_id);
    }
    std::size_t utt_hits = 0;
    for (const auto& s : selected)
      if (ref_utts.contains({s.speaker_id, s.utterance_id})) ++utt_hits;
    std::size_t spk_hits = 0;
    for (const auto& [sp, _] : per_speaker)
      if (ref_speakers.contains(sp)) ++spk_hits;

    stats.utterance_overlap_pct =
        ref_utts.empty() ? 0.0 : 100.0 * static_cast<double>(utt_hits) / ref_utts.size();
    stats.speaker_overlap_pct =
        ref_speakers.empty() ? 0.0
                             : 100.0 * static_cast<double>(spk_hits) / ref_speakers.size();
  }
  return stats;
}

HistogramTable score_histogram(std::span<const ScoredUtterance> ranked, std::size_t bins,
                               HistogramGroupBy group_by) {
  if (ranked.empty()) fail("score_histogram requires a nonempty ranking");
  if (bins < 1) fail("score_histogram requires bins >= 1");

  HistogramTable table;
  table.bins = bins;
  table.lo = ranked.front().plda_raw;
  table.hi = ranked.front().plda_raw;
  for (const auto& s : ranked) {
    table.lo = std::min(table.lo, s.plda_raw);
    table.hi = std::max(table.hi, s.plda_raw);
  }
  double width = (table.hi - table.lo) / static_cast<double>(bins);

  std::map<std::string, std::vector<std::size_t>> groups;
  for (const auto& s : ranked) {
    std::string group = "all";
    if (group_by == HistogramGroupBy::kSpeakerGenderTag)
      group = s.tag.value_or("untagged");
    auto [it, _] = groups.try_emplace(group, std::vector<std::size_t>(bins, 0));
    std::size_t idx = 0;
    if (width > 0.0) {
      idx = static_cast<std::size_t>((s.plda_raw - table.lo) / width);
      idx = std::min(idx, bins - 1);
    }
    ++it->second[idx];
  }
  for (auto& [name, counts] : groups)
    table.rows.push_back(HistogramTable::Row{name, std::move(counts)});
  return table;
}

std::string HistogramTable::to_csv() const {
  std::ostringstream out;
  out << "group,bin,bin_lo,bin_hi,count\n";
  double width = bins > 0 ? (hi - lo) / static_cast<double>(bins) : 0.0;
  for (const auto& row : rows) {
    for (std::size_t b = 0; b < row.counts.size(); ++b) {
      out << row.group << ',' << b << ',' << (lo + width * static_cast<double>(b)) << ','
          << (lo + width * static_cast<double>(b + 1)) << ',' << row.counts[b] << '\n';
    }
  }
  return out.str();
}

}  // namespace voxsel
