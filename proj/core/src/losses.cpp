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

#include "voxsel/losses.hpp"

#include <algorithm>
#include <cmath>

namespace voxsel {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

constexpr double kLogMagFloor = 1e-7;

StftLossConfig make_preset(std::initializer_list<std::size_t> ffts,
                           std::initializer_list<std::size_t> shifts,
                           std::initializer_list<std::size_t> windows) {
  StftLossConfig cfg;
  auto f = ffts.begin();
  auto s = shifts.begin();
  auto w = windows.begin();
  for (; f != ffts.end(); ++f, ++s, ++w)
    cfg.resolutions.push_back(StftConfig{*f, *s, *w});
  return cfg;
}

}  // namespace

void StftLossConfig::validate() const {
  if (resolutions.empty()) fail("stft loss config needs at least one resolution");
  for (const auto& r : resolutions) r.validate();
}

StftLossConfig fullband_stft_preset() {
  return make_preset({1024, 2048, 4096}, {120, 240, 480}, {600, 1200, 2400});
}

StftLossConfig subband_stft_preset() {
  return make_preset({384, 683, 171}, {30, 60, 10}, {150, 300, 60});
}

StftLossTerms stft_loss_single(const AudioBuffer& x, const AudioBuffer& y,
                               const StftConfig& cfg) {
  if (x.samples.size() != y.samples.size())
    fail("stft loss signals differ in length (" + std::to_string(x.samples.size()) +
         " vs " + std::to_string(y.samples.size()) + ")");
  if (x.sample_rate_hz != y.sample_rate_hz)
    fail("stft loss signals differ in sample rate");

  SpectralFrameSeries sx = stft_magnitude(x, cfg);
  SpectralFrameSeries sy = stft_magnitude(y, cfg);

  double diff_sq = 0.0, ref_sq = 0.0;
  double mag_acc = 0.0;
  std::size_t count = 0;
  for (std::size_t t = 0; t < sy.num_frames(); ++t) {
    for (std::size_t b = 0; b < sy.num_bins; ++b) {
      double mx = sx.frames[t][b];
      double my = sy.frames[t][b];
      double d = my - mx;
      diff_sq += d * d;
      ref_sq += my * my;
      mag_acc += std::abs(std::log(std::max(mx, kLogMagFloor)) -
                          std::log(std::max(my, kLogMagFloor)));
      ++count;
    }
  }
  if (ref_sq == 0.0)
    fail("stft loss reference signal has zero spectral energy");

  StftLossTerms terms;
  terms.spectral_convergence = std::sqrt(diff_sq) / std::sqrt(ref_sq);
  terms.log_magnitude = mag_acc / static_cast<double>(count);
  return terms;
}

double multi_resolution_stft_loss(const AudioBuffer& x, const AudioBuffer& y,
                                  const StftLossConfig& cfg) {
  cfg.validate();
  double acc = 0.0;
  for (const auto& res : cfg.resolutions) acc += stft_loss_single(x, y, res).total();
  return acc / static_cast<double>(cfg.resolutions.size());
}

double combined_sp_loss(const AudioBuffer& x_full, const AudioBuffer& y_full,
                        const std::vector<Vec>& x_sub, const std::vector<Vec>& y_sub,
                        const StftLossConfig& full_cfg, const StftLossConfig& sub_cfg,
                        std::uint32_t subband_rate_hz) {
  if (x_sub.size() != y_sub.size())
    fail("combined loss band-count mismatch (" + std::to_string(x_sub.size()) + " vs " +
         std::to_string(y_sub.size()) + ")");
  if (x_sub.empty()) fail("combined loss needs at least one subband");

  double loss = multi_resolution_stft_loss(x_full, y_full, full_cfg);
  double sub_acc = 0.0;
  for (std::size_t k = 0; k < x_sub.size(); ++k) {
    AudioBuffer xa{x_sub[k], subband_rate_hz};
    AudioBuffer ya{y_sub[k], subband_rate_hz};
    sub_acc += multi_resolution_stft_loss(xa, ya, sub_cfg);
  }
  return loss + sub_acc / static_cast<double>(x_sub.size());
}

double discriminator_loss(std::span<const Vec> real_scores,
                          std::span<const Vec> fake_scores) {
  if (real_scores.size() != fake_scores.size() || real_scores.empty())
    fail("discriminator loss needs matching, nonempty score lists");

  double acc = 0.0;
  for (std::size_t k = 0; k < real_scores.size(); ++k) {
    const Vec& real = real_scores[k];
    const Vec& fake = fake_scores[k];
    if (real.empty() || fake.empty())
      fail("discriminator " + std::to_string(k + 1) + " has an empty score vector");
    double real_term = 0.0;
    for (double r : real) real_term += (1.0 - r) * (1.0 - r);
    double fake_term = 0.0;
    for (double f : fake) fake_term += f * f;
    acc += real_term / static_cast<double>(real.size()) +
           fake_term / static_cast<double>(fake.size());
  }
  return acc / static_cast<double>(real_scores.size());
}

double adversarial_loss(std::span<const double> fake_scores) {
  if (fake_scores.empty()) fail("adversarial loss needs a nonempty score vector");
  double acc = 0.0;
  for (double f : fake_scores) acc += (1.0 - f) * (1.0 - f);
  return acc / static_cast<double>(fake_scores.size());
}

double generator_loss(double adv, double sp, const GanLossWeights& weights) {
  if (!std::isfinite(adv) || !std::isfinite(sp))
    fail("generator loss inputs must be finite");
  if (!(weights.lambda_adv >= 0.0) || !std::isfinite(weights.lambda_adv))
    fail("lambda_adv must be finite and non-negative");
  return weights.lambda_adv * adv + sp;
}

}  // namespace voxsel
