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

#ifndef VOXSEL_STFT_HPP_
#define VOXSEL_STFT_HPP_

#include <cstddef>
#include <vector>

#include "voxsel/audio.hpp"
#include "voxsel/common.hpp"

namespace voxsel {

struct StftConfig {
  std::size_t fft_size = 2048;
  std::size_t hop = 220;
  std::size_t window_length = 2048;  // periodic Hann

  void validate() const;  // hop <= window_length <= fft_size, all positive
};

// Framewise magnitude spectra: num_frames x (fft_size/2 + 1).
struct SpectralFrameSeries {
  StftConfig config;
  std::size_t num_bins = 0;
  std::vector<Vec> frames;

  std::size_t num_frames() const { return frames.size(); }
};

// Centered frames (frame t at sample t*hop) with reflection padding,
// periodic Hann window, zero-padding up to fft_size. Requires at least one
// window of audio.
SpectralFrameSeries stft_magnitude(const AudioBuffer& audio, const StftConfig& cfg);

// Triangular mel filterbank on the HTK mel scale. Rows are filters over
// the one-sided spectrum bins.
std::vector<Vec> mel_filterbank(std::size_t num_mels, std::size_t fft_size,
                                double sample_rate_hz, double fmin_hz, double fmax_hz);

// Log mel-spectrogram (natural log, magnitudes floored at 1e-10):
// num_frames x num_mels.
std::vector<Vec> mel_spectrogram(const AudioBuffer& audio, const StftConfig& cfg,
                                 std::size_t num_mels, double fmin_hz, double fmax_hz);

// Per frame: log-mel energies followed by an orthonormal DCT-II, truncated
// to order+1 coefficients (c0..c_order). Uses 80 internal mel bins over
// [0, fs/2].
std::vector<Vec> mel_cepstrum(const AudioBuffer& audio, const StftConfig& cfg,
                              std::size_t order);

// Orthonormal DCT-II of one vector, first `count` coefficients.
Vec dct_orthonormal(std::span<const double> input, std::size_t count);

}  // namespace voxsel

#endif  // VOXSEL_STFT_HPP_
