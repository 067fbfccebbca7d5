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

#ifndef VOXSEL_METRICS_HPP_
#define VOXSEL_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voxsel/audio.hpp"
#include "voxsel/f0.hpp"
#include "voxsel/plda.hpp"
#include "voxsel/stft.hpp"

namespace voxsel {

struct MetricsConfig {
  StftConfig lsd_stft{2048, 220, 2048};
  std::size_t mcd_order = 24;
  F0Config f0;
};

// Log spectral distortion in dB: per frame the RMS over bins of
// 20*log10(|X|+eps) - 20*log10(|Y|+eps), eps = 1e-10, averaged over frames.
// The test signal is center-trimmed or zero-padded to the reference
// length; more than one hop of length mismatch is an error.
double lsd(const AudioBuffer& x, const AudioBuffer& y, const StftConfig& cfg);

// Mel-cepstral distortion in dB over coefficients 1..order (c0 excluded):
// (10*sqrt(2)/ln 10) * mean_t sqrt(sum_d (cx_d - cy_d)^2).
double mcd(const AudioBuffer& x, const AudioBuffer& y, std::size_t order);

// MCD evaluated directly on precomputed cepstra (frame counts may differ
// by at most one; the trailing frame is dropped).
double mcd_from_cepstra(std::span<const Vec> cx, std::span<const Vec> cy);

struct F0Metrics {
  double rmse_hz = 0.0;       // over ALL frames, unvoiced contributing 0
  double uv_error_pct = 0.0;  // mismatched voicing decisions, percent
};

F0Metrics f0_metrics(const AudioBuffer& x, const AudioBuffer& y, const F0Config& cfg);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

// One evaluation pair: audio, embeddings, or both.
struct PairInput {
  std::string id;
  std::optional<AudioBuffer> ref_audio;
  std::optional<AudioBuffer> test_audio;
  std::optional<Vec> ref_embedding;
  std::optional<Vec> test_embedding;
};

struct UtteranceEval {
  std::string id;
  std::optional<double> lsd_db;
  std::optional<double> mcd_db;
  std::optional<double> f0_rmse_hz;
  std::optional<double> uv_error_pct;
  std::optional<double> cos_sim;
  std::optional<double> plda;
};

struct EvalReport {
  // Arithmetic means over the pairs that carry each metric; absent when no
  // pair does.
  std::optional<double> lsd_db;
  std::optional<double> mcd_db;
  std::optional<double> f0_rmse_hz;
  std::optional<double> uv_error_pct;
  std::optional<double> cos_sim;
  std::optional<double> plda;
  std::vector<UtteranceEval> per_utterance;  // input order
};

// model may be null; the PLDA row is then omitted.
EvalReport evaluate_pair_set(std::span<const PairInput> pairs, const PldaModel* model,
                             const MetricsConfig& cfg);

}  // namespace voxsel

#endif  // VOXSEL_METRICS_HPP_
