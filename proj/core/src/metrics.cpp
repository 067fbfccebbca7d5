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

#include "voxsel/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace voxsel {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

constexpr double kLsdEps = 1e-10;

// Center-trims or zero-pads `test` to the reference length. More than one
// hop of mismatch is treated as misalignment rather than silently fixed.
Vec align_to_reference(const Vec& test, std::size_t ref_len, std::size_t hop) {
  std::size_t test_len = test.size();
  std::size_t diff = test_len > ref_len ? test_len - ref_len : ref_len - test_len;
  if (diff > hop)
    fail("signal lengths differ by " + std::to_string(diff) + " samples, more than one hop (" +
         std::to_string(hop) + ")");
  if (diff == 0) return test;

  Vec out(ref_len, 0.0);
  if (test_len > ref_len) {
    std::size_t front = diff / 2;
    std::copy_n(test.begin() + static_cast<std::ptrdiff_t>(front), ref_len, out.begin());
  } else {
    std::size_t front = diff / 2;
    std::copy(test.begin(), test.end(), out.begin() + static_cast<std::ptrdiff_t>(front));
  }
  return out;
}

double mean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

double lsd(const AudioBuffer& x, const AudioBuffer& y, const StftConfig& cfg) {
  if (x.sample_rate_hz != y.sample_rate_hz) fail("lsd signals differ in sample rate");
  AudioBuffer xa{align_to_reference(x.samples, y.samples.size(), cfg.hop), x.sample_rate_hz};

  SpectralFrameSeries sx = stft_magnitude(xa, cfg);
  SpectralFrameSeries sy = stft_magnitude(y, cfg);

  std::vector<double> per_frame;
  per_frame.reserve(sy.num_frames());
  for (std::size_t t = 0; t < sy.num_frames(); ++t) {
    double acc = 0.0;
    for (std::size_t b = 0; b < sy.num_bins; ++b) {
      double dx = 20.0 * std::log10(sx.frames[t][b] + kLsdEps);
      double dy = 20.0 * std::log10(sy.frames[t][b] + kLsdEps);
      acc += (dx - dy) * (dx - dy);
    }
    per_frame.push_back(std::sqrt(acc / static_cast<double>(sy.num_bins)));
  }
  return mean(per_frame);
}

double mcd_from_cepstra(std::span<const Vec> cx, std::span<const Vec> cy) {
  if (cx.empty() || cy.empty()) fail("mcd needs at least one cepstral frame");
  std::size_t nx = cx.size(), ny = cy.size();
  if ((nx > ny ? nx - ny : ny - nx) > 1)
    fail("mcd frame counts differ by more than one (" + std::to_string(nx) + " vs " +
         std::to_string(ny) + ")");
  std::size_t frames = std::min(nx, ny);
  std::size_t order = cx.front().size() - 1;

  const double scale = 10.0 * std::sqrt(2.0) / std::log(10.0);
  double acc = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    if (cx[t].size() != order + 1 || cy[t].size() != order + 1)
      fail("mcd cepstra have inconsistent order");
    double dist_sq = 0.0;
    for (std::size_t d = 1; d <= order; ++d) {
      double diff = cx[t][d] - cy[t][d];
      dist_sq += diff * diff;
    }
    acc += std::sqrt(dist_sq);
  }
  return scale * acc / static_cast<double>(frames);
}

double mcd(const AudioBuffer& x, const AudioBuffer& y, std::size_t order) {
  if (x.sample_rate_hz != y.sample_rate_hz) fail("mcd signals differ in sample rate");
  StftConfig cfg{2048, 220, 2048};
  AudioBuffer xa{align_to_reference(x.samples, y.samples.size(), cfg.hop), x.sample_rate_hz};
  std::vector<Vec> cx = mel_cepstrum(xa, cfg, order);
  std::vector<Vec> cy = mel_cepstrum(y, cfg, order);
  return mcd_from_cepstra(cx, cy);
}

F0Metrics f0_metrics(const AudioBuffer& x, const AudioBuffer& y, const F0Config& cfg) {
  if (x.sample_rate_hz != y.sample_rate_hz) fail("f0 metric signals differ in sample rate");
  F0Track tx = estimate_f0(x, cfg);
  F0Track ty = estimate_f0(y, cfg);

  std::size_t nx = tx.num_frames(), ny = ty.num_frames();
  if ((nx > ny ? nx - ny : ny - nx) > 1)
    fail("f0 frame counts differ by more than one (" + std::to_string(nx) + " vs " +
         std::to_string(ny) + ")");
  std::size_t frames = std::min(nx, ny);
  if (frames == 0) fail("f0 metrics need at least one frame");

  double sq_acc = 0.0;
  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < frames; ++t) {
    double diff = tx.f0_hz[t] - ty.f0_hz[t];
    sq_acc += diff * diff;
    if (tx.voiced[t] != ty.voiced[t]) ++mismatches;
  }
  F0Metrics out;
  out.rmse_hz = std::sqrt(sq_acc / static_cast<double>(frames));
  out.uv_error_pct = 100.0 * static_cast<double>(mismatches) / static_cast<double>(frames);
  return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail("cosine similarity dimension mismatch");
  if (a.empty()) fail("cosine similarity of empty vectors");
  CompensatedSum dot, na, nb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot.add(a[i] * b[i]);
    na.add(a[i] * a[i]);
    nb.add(b[i] * b[i]);
  }
  double denom = std::sqrt(na.value()) * std::sqrt(nb.value());
  if (denom < 1e-300) fail("cosine similarity of a zero vector");
  return std::clamp(dot.value() / denom, -1.0, 1.0);
}

EvalReport evaluate_pair_set(std::span<const PairInput> pairs, const PldaModel* model,
                             const MetricsConfig& cfg) {
  if (pairs.empty()) fail("evaluate_pair_set needs at least one pair");

  EvalReport report;
  report.per_utterance.reserve(pairs.size());
  bool any_metric = false;

  for (const auto& pair : pairs) {
    UtteranceEval eval;
    eval.id = pair.id;
    if (pair.ref_audio && pair.test_audio) {
      eval.lsd_db = lsd(*pair.test_audio, *pair.ref_audio, cfg.lsd_stft);
      eval.mcd_db = mcd(*pair.test_audio, *pair.ref_audio, cfg.mcd_order);
      F0Metrics f0m = f0_metrics(*pair.test_audio, *pair.ref_audio, cfg.f0);
      eval.f0_rmse_hz = f0m.rmse_hz;
      eval.uv_error_pct = f0m.uv_error_pct;
      any_metric = true;
    }
    if (pair.ref_embedding && pair.test_embedding) {
      eval.cos_sim = cosine_similarity(*pair.ref_embedding, *pair.test_embedding);
      if (model != nullptr) {
        PreparedEmbedding ref = prepare(*model, std::span<const double>(*pair.ref_embedding));
        PreparedEmbedding test =
            prepare(*model, std::span<const double>(*pair.test_embedding));
        eval.plda = plda_score(*model, ref, test);
      }
      any_metric = true;
    }
    report.per_utterance.push_back(std::move(eval));
  }
  if (!any_metric) fail("no computable metric in the pair set");

  auto aggregate = [&](auto field) -> std::optional<double> {
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& e : report.per_utterance) {
      if ((e.*field).has_value()) {
        acc += *(e.*field);
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return acc / static_cast<double>(n);
  };
  report.lsd_db = aggregate(&UtteranceEval::lsd_db);
  report.mcd_db = aggregate(&UtteranceEval::mcd_db);
  report.f0_rmse_hz = aggregate(&UtteranceEval::f0_rmse_hz);
  report.uv_error_pct = aggregate(&UtteranceEval::uv_error_pct);
  report.cos_sim = aggregate(&UtteranceEval::cos_sim);
  report.plda = aggregate(&UtteranceEval::plda);
  return report;
}

}  // namespace voxsel
