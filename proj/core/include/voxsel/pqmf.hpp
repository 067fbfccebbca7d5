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

#ifndef VOXSEL_PQMF_HPP_
#define VOXSEL_PQMF_HPP_

#include <cstddef>
#include <vector>

#include "voxsel/audio.hpp"
#include "voxsel/common.hpp"

namespace voxsel {

// Near-perfect-reconstruction cosine-modulated filterbank built from a
// Kaiser-windowed lowpass prototype.
struct PqmfBank {
  std::size_t num_bands = 0;
  std::size_t taps = 0;                // filter order; taps+1 coefficients
  double kaiser_beta = 0.0;
  double cutoff = 0.0;                 // prototype cutoff, cycles/sample
  std::vector<Vec> analysis_filters;   // num_bands x (taps+1)
  std::vector<Vec> synthesis_filters;  // num_bands x (taps+1)

  // Analysis input is padded with taps/2 leading zeros, so the
  // analyze->synthesize round trip is delayed by this many samples.
  std::size_t round_trip_delay() const { return taps + taps / 2; }
};

// Designs the bank for the given band count. The prototype cutoff is found
// by golden-section search over (0, 1/(2*num_bands)) cycles/sample,
// minimizing the worst-case deviation of the overall analysis-synthesis
// magnitude response from unity on a dense frequency grid.
PqmfBank design_pqmf(std::size_t num_bands, std::size_t taps, double kaiser_beta);

// Filters each band and decimates by num_bands. Output rows have
// ceil(N / num_bands) samples.
std::vector<Vec> pqmf_analyze(const PqmfBank& bank, const AudioBuffer& audio);

// Zero-stuffing upsampler (scaled by num_bands), synthesis filtering, and
// band summation. Output has rows*num_bands samples at sample_rate_hz.
AudioBuffer pqmf_synthesize(const PqmfBank& bank, const std::vector<Vec>& subbands,
                            std::uint32_t sample_rate_hz);

// Analyze->synthesize SNR in dB after group-delay alignment, with `trim`
// samples dropped at each edge (defaults to the filter order).
double pqmf_round_trip_snr_db(const PqmfBank& bank, const AudioBuffer& audio);

}  // namespace voxsel

#endif  // VOXSEL_PQMF_HPP_
