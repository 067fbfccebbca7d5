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

#ifndef VOXSEL_TESTS_HELPERS_HPP_
#define VOXSEL_TESTS_HELPERS_HPP_

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "voxsel/audio.hpp"
#include "voxsel/embedding.hpp"
#include "voxsel/plda.hpp"

namespace voxsel::test {

// Unique working directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    static std::atomic<unsigned> counter{0};
    path_ = base / ("voxsel-test-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::vector<float> random_embedding(std::mt19937_64& rng, std::size_t dim,
                                           float scale = 1.0f) {
  std::normal_distribution<float> dist(0.0f, scale);
  std::vector<float> e(dim);
  for (auto& v : e) v = dist(rng);
  return e;
}

// Identity-transform model with zero mean and constant psi.
inline PldaModel identity_plda(std::size_t dim, double psi_value = 1.0) {
  PldaModel model;
  model.dim = dim;
  model.mean.assign(dim, 0.0);
  model.psi.assign(dim, psi_value);
  model.transform.assign(dim, Vec(dim, 0.0));
  for (std::size_t d = 0; d < dim; ++d) model.transform[d][d] = 1.0;
  return model;
}

inline AudioBuffer sine_wave(double freq_hz, std::uint32_t fs, double seconds,
                             double amplitude = 0.5) {
  AudioBuffer audio;
  audio.sample_rate_hz = fs;
  auto n = static_cast<std::size_t>(seconds * fs);
  audio.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    audio.samples[i] =
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / fs);
  return audio;
}

inline AudioBuffer white_noise(std::uint32_t fs, double seconds, double sigma,
                               std::uint64_t seed) {
  AudioBuffer audio;
  audio.sample_rate_hz = fs;
  auto n = static_cast<std::size_t>(seconds * fs);
  audio.samples.resize(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  for (auto& s : audio.samples) s = dist(rng);
  return audio;
}

}  // namespace voxsel::test

#endif  // VOXSEL_TESTS_HELPERS_HPP_
