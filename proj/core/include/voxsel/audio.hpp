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

#ifndef VOXSEL_AUDIO_HPP_
#define VOXSEL_AUDIO_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "voxsel/common.hpp"

namespace voxsel {

// Mono waveform. PCM16 samples are scaled to [-1, 1) on read.
struct AudioBuffer {
  Vec samples;
  std::uint32_t sample_rate_hz = 0;

  void validate() const;  // finite samples, positive rate
};

enum class WavEncoding { kPcm16, kFloat32 };

// RIFF WAV reader; accepts PCM 16-bit and IEEE float 32-bit, mono only.
AudioBuffer read_wav(const std::filesystem::path& path);

void write_wav(const AudioBuffer& audio, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace voxsel

#endif  // VOXSEL_AUDIO_HPP_
