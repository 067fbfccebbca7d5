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

#include "voxsel/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "voxsel/fft.hpp"

namespace voxsel {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

constexpr double kLogFloor = 1e-10;
constexpr std::size_t kCepstrumMelBins = 80;

// Symmetric reflection without repeating the edge sample.
double sample_reflected(const Vec& x, std::ptrdiff_t i) {
  auto n = static_cast<std::ptrdiff_t>(x.size());
  if (n == 1) return x[0];
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return x[static_cast<std::size_t>(i)];
}

Vec periodic_hann(std::size_t length) {
  Vec w(length);
  for (std::size_t i = 0; i < length; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(length));
  return w;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

void StftConfig::validate() const {
  if (fft_size == 0 || hop == 0 || window_length == 0)
    fail("stft config entries must be positive");
  if (window_length > fft_size)
    fail("stft window_length exceeds fft_size");
  if (hop > window_length)
    fail("stft hop exceeds window_length");
}

SpectralFrameSeries stft_magnitude(const AudioBuffer& audio, const StftConfig& cfg) {
  cfg.validate();
  if (audio.samples.size() < cfg.window_length)
    fail("audio shorter than one stft window (" + std::to_string(audio.samples.size()) +
         " < " + std::to_string(cfg.window_length) + " samples)");

  const Vec window = periodic_hann(cfg.window_length);
  std::size_t num_frames = audio.samples.size() / cfg.hop + 1;
  auto half = static_cast<std::ptrdiff_t>(cfg.window_length / 2);

  SpectralFrameSeries out;
  out.config = cfg;
  out.num_bins = cfg.fft_size / 2 + 1;
  out.frames.resize(num_frames);

  std::vector<std::complex<double>> buf(cfg.fft_size);
  Vec frame(cfg.window_length);
  for (std::size_t t = 0; t < num_frames; ++t) {
    auto center = static_cast<std::ptrdiff_t>(t * cfg.hop);
    for (std::size_t i = 0; i < cfg.window_length; ++i)
      frame[i] = window[i] *
                 sample_reflected(audio.samples,
                                  center - half + static_cast<std::ptrdiff_t>(i));
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t i = 0; i < cfg.window_length; ++i) buf[i] = frame[i];
    fft(buf);
    Vec& mags = out.frames[t];
    mags.resize(out.num_bins);
    for (std::size_t b = 0; b < out.num_bins; ++b) mags[b] = std::abs(buf[b]);
  }
  return out;
}

std::vector<Vec> mel_filterbank(std::size_t num_mels, std::size_t fft_size,
                                double sample_rate_hz, double fmin_hz, double fmax_hz) {
  if (num_mels == 0) fail("mel filterbank needs at least one filter");
  if (!(fmin_hz >= 0.0) || !(fmin_hz < fmax_hz) || fmax_hz > sample_rate_hz / 2.0 + 1e-9)
    fail("invalid mel frequency range [" + std::to_string(fmin_hz) + ", " +
         std::to_string(fmax_hz) + "] for sample rate " + std::to_string(sample_rate_hz));

  std::size_t bins = fft_size / 2 + 1;
  double mel_lo = hz_to_mel(fmin_hz);
  double mel_hi = hz_to_mel(fmax_hz);
  std::vector<double> edges(num_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                      static_cast<double>(num_mels + 1));

  std::vector<Vec> filters(num_mels, Vec(bins, 0.0));
  for (std::size_t m = 0; m < num_mels; ++m) {
    double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (std::size_t b = 0; b < bins; ++b) {
      double f = sample_rate_hz * static_cast<double>(b) / static_cast<double>(fft_size);
      if (f <= left || f >= right) continue;
      filters[m][b] = f <= center ? (f - left) / (center - left)
                                  : (right - f) / (right - center);
    }
  }
  return filters;
}

std::vector<Vec> mel_spectrogram(const AudioBuffer& audio, const StftConfig& cfg,
                                 std::size_t num_mels, double fmin_hz, double fmax_hz) {
  SpectralFrameSeries spec = stft_magnitude(audio, cfg);
  std::vector<Vec> fb =
      mel_filterbank(num_mels, cfg.fft_size, audio.sample_rate_hz, fmin_hz, fmax_hz);

  std::vector<Vec> mel(spec.num_frames(), Vec(num_mels));
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    for (std::size_t m = 0; m < num_mels; ++m) {
      double acc = 0.0;
      const Vec& w = fb[m];
      for (std::size_t b = 0; b < spec.num_bins; ++b) acc += w[b] * spec.frames[t][b];
      mel[t][m] = std::log(std::max(acc, kLogFloor));
    }
  }
  return mel;
}

Vec dct_orthonormal(std::span<const double> input, std::size_t count) {
  std::size_t n = input.size();
  if (count > n) fail("dct coefficient count exceeds input size");
  Vec out(count);
  for (std::size_t k = 0; k < count; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += input[j] * std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) *
                                 static_cast<double>(k) / static_cast<double>(n));
    double scale = k == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                          : std::sqrt(2.0 / static_cast<double>(n));
    out[k] = scale * acc;
  }
  return out;
}

std::vector<Vec> mel_cepstrum(const AudioBuffer& audio, const StftConfig& cfg,
                              std::size_t order) {
  if (order + 1 > kCepstrumMelBins)
    fail("cepstrum order " + std::to_string(order) + " too large for " +
         std::to_string(kCepstrumMelBins) + " mel bins");
  std::vector<Vec> mel = mel_spectrogram(audio, cfg, kCepstrumMelBins, 0.0,
                                         audio.sample_rate_hz / 2.0);
  std::vector<Vec> cepstra(mel.size());
  for (std::size_t t = 0; t < mel.size(); ++t)
    cepstra[t] = dct_orthonormal(mel[t], order + 1);
  return cepstra;
}

}  // namespace voxsel
