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

#ifndef VOXSEL_LOSSES_HPP_
#define VOXSEL_LOSSES_HPP_

#include <span>
#include <vector>

#include "voxsel/audio.hpp"
#include "voxsel/stft.hpp"

namespace voxsel {

struct StftLossConfig {
  std::vector<StftConfig> resolutions;

  void validate() const;
};

// FFT [1024, 2048, 4096], shift [120, 240, 480], window [600, 1200, 2400].
StftLossConfig fullband_stft_preset();

// FFT [384, 683, 171], shift [30, 60, 10], window [150, 300, 60]; the
// non-power-of-two sizes go through the general-length DFT path.
StftLossConfig subband_stft_preset();

struct GanLossWeights {
  double lambda_adv = 2.5;
};

struct StftLossTerms {
  double spectral_convergence = 0.0;  // ||  |Y|-|X| ||_F / || |Y| ||_F
  double log_magnitude = 0.0;         // mean |log|X| - log|Y||, floor 1e-7

  double total() const { return spectral_convergence + log_magnitude; }
};

// x is the signal under test, y the reference.
StftLossTerms stft_loss_single(const AudioBuffer& x, const AudioBuffer& y,
                               const StftConfig& cfg);

// Mean over resolutions of (sc + mag).
double multi_resolution_stft_loss(const AudioBuffer& x, const AudioBuffer& y,
                                  const StftLossConfig& cfg);

// Fullband loss plus the mean of the per-band subband losses. Subband rows
// are taken at the decimated rate.
double combined_sp_loss(const AudioBuffer& x_full, const AudioBuffer& y_full,
                        const std::vector<Vec>& x_sub, const std::vector<Vec>& y_sub,
                        const StftLossConfig& full_cfg, const StftLossConfig& sub_cfg,
                        std::uint32_t subband_rate_hz);

// Least-squares GAN discriminator loss over K discriminators:
// (1/K) sum_k [ mean((1-real_k)^2) + mean(fake_k^2) ].
double discriminator_loss(std::span<const Vec> real_scores, std::span<const Vec> fake_scores);

// mean((1 - fake)^2).
double adversarial_loss(std::span<const double> fake_scores);

// lambda_adv * adv + sp.
double generator_loss(double adv, double sp, const GanLossWeights& weights);

}  // namespace voxsel

#endif  // VOXSEL_LOSSES_HPP_
