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

#ifndef VOXSEL_F0_HPP_
#define VOXSEL_F0_HPP_

#include <vector>

#include "voxsel/audio.hpp"

namespace voxsel {

struct F0Config {
  double frame_period_ms = 5.0;
  double fmin_hz = 70.0;
  double fmax_hz = 400.0;

  void validate(double sample_rate_hz) const;
};

struct F0Track {
  std::vector<double> f0_hz;  // 0 where unvoiced
  std::vector<bool> voiced;
  double frame_period_ms = 0.0;

  std::size_t num_frames() const { return f0_hz.size(); }
};

// Normalized-autocorrelation pitch tracker. A frame is voiced when the
// peak normalized autocorrelation over the lag range [fs/fmax, fs/fmin]
// reaches 0.3 and the frame RMS reaches 1e-4 of full scale. f0 comes from
// the first local peak within 10% of the global maximum (suppresses
// subharmonic octave errors), refined by parabolic interpolation.
F0Track estimate_f0(const AudioBuffer& audio, const F0Config& cfg);

}  // namespace voxsel

#endif  // VOXSEL_F0_HPP_
