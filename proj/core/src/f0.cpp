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

#include "voxsel/f0.hpp"

#include <algorithm>
#include <cmath>

namespace voxsel {
namespace {

constexpr double kVoicingThreshold = 0.3;
constexpr double kRmsGate = 1e-4;
constexpr double kPeakAcceptRatio = 0.9;

}  // namespace

void F0Config::validate(double sample_rate_hz) const {
  if (!(frame_period_ms > 0.0))
    throw ValidationError("f0 frame period must be positive");
  if (!(fmin_hz > 0.0) || !(fmin_hz < fmax_hz) || !(fmax_hz < sample_rate_hz / 2.0))
    throw ValidationError("invalid f0 search range [" + std::to_string(fmin_hz) + ", " +
                          std::to_string(fmax_hz) + "] at sample rate " +
                          std::to_string(sample_rate_hz));
}

F0Track estimate_f0(const AudioBuffer& audio, const F0Config& cfg) {
  audio.validate();
  double fs = audio.sample_rate_hz;
  cfg.validate(fs);

  auto min_lag = static_cast<std::size_t>(std::max(2.0, std::ceil(fs / cfg.fmax_hz)));
  auto max_lag = static_cast<std::size_t>(std::floor(fs / cfg.fmin_hz));
  if (max_lag <= min_lag)
    throw ValidationError("f0 search range collapses at this sample rate");

  std::size_t window = max_lag;        // correlation window
  std::size_t span = window + max_lag; // samples touched per frame
  auto hop = static_cast<std::size_t>(
      std::max(1.0, std::round(fs * cfg.frame_period_ms / 1000.0)));

  F0Track track;
  track.frame_period_ms = cfg.frame_period_ms;
  const Vec& x = audio.samples;
  if (x.size() < span) return track;

  std::size_t num_frames = (x.size() - span) / hop + 1;
  track.f0_hz.assign(num_frames, 0.0);
  track.voiced.assign(num_frames, false);

  std::vector<double> corr(max_lag + 2, 0.0);
  for (std::size_t t = 0; t < num_frames; ++t) {
    std::size_t p = t * hop;

    double energy = 0.0;
    for (std::size_t i = 0; i < span; ++i) energy += x[p + i] * x[p + i];
    double rms = std::sqrt(energy / static_cast<double>(span));
    if (rms < kRmsGate) continue;

    double e0 = 0.0;
    for (std::size_t i = 0; i < window; ++i) e0 += x[p + i] * x[p + i];

    std::size_t lag_hi = std::min(max_lag + 1, x.size() - p - window);
    for (std::size_t lag = min_lag; lag <= std::min(max_lag, lag_hi); ++lag) {
      double cross = 0.0, e1 = 0.0;
      for (std::size_t i = 0; i < window; ++i) {
        cross += x[p + i] * x[p + lag + i];
        e1 += x[p + lag + i] * x[p + lag + i];
      }
      corr[lag] = cross / std::sqrt(e0 * e1 + 1e-30);
    }

    double best = 0.0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) best = std::max(best, corr[lag]);
    if (best < kVoicingThreshold) continue;

    // First local peak close to the global maximum; a pure tone's
    // autocorrelation peaks again at every period multiple, often a hair
    // higher, and picking the earliest strong peak avoids halving f0.
    std::size_t peak = 0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      double left = lag > min_lag ? corr[lag - 1] : -1.0;
      double right = lag < max_lag ? corr[lag + 1] : -1.0;
      if (corr[lag] >= left && corr[lag] >= right &&
          corr[lag] >= kPeakAcceptRatio * best) {
        peak = lag;
        break;
      }
    }
    if (peak == 0) continue;

    double delta = 0.0;
    if (peak > min_lag && peak < max_lag) {
      double ym = corr[peak - 1], y0 = corr[peak], yp = corr[peak + 1];
      double denom = ym - 2.0 * y0 + yp;
      if (std::abs(denom) > 1e-12) delta = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    }

    track.voiced[t] = true;
    track.f0_hz[t] = fs / (static_cast<double>(peak) + delta);
  }
  return track;
}

}  // namespace voxsel
