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

#include "voxsel/pqmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "voxsel/fft.hpp"

namespace voxsel {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

constexpr std::size_t kResponseGrid = 4096;

// Zeroth-order modified Bessel function of the first kind (series form).
double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  double half_x = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

Vec kaiser_window(std::size_t length, double beta) {
  Vec w(length);
  double denom = bessel_i0(beta);
  double mid = static_cast<double>(length - 1) / 2.0;
  for (std::size_t n = 0; n < length; ++n) {
    double r = (static_cast<double>(n) - mid) / mid;
    w[n] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
  }
  return w;
}

// Kaiser-windowed ideal lowpass with cutoff in cycles/sample, taps+1 coeffs.
Vec prototype_filter(std::size_t taps, double cutoff, double beta) {
  Vec h(taps + 1);
  Vec w = kaiser_window(taps + 1, beta);
  double mid = static_cast<double>(taps) / 2.0;
  for (std::size_t n = 0; n <= taps; ++n) {
    double t = static_cast<double>(n) - mid;
    double ideal = t == 0.0 ? 2.0 * cutoff
                            : std::sin(2.0 * std::numbers::pi * cutoff * t) /
                                  (std::numbers::pi * t);
    h[n] = ideal * w[n];
  }
  return h;
}

void modulate(const Vec& prototype, std::size_t num_bands, std::vector<Vec>& analysis,
              std::vector<Vec>& synthesis) {
  std::size_t len = prototype.size();
  double mid = static_cast<double>(len - 1) / 2.0;
  analysis.assign(num_bands, Vec(len));
  synthesis.assign(num_bands, Vec(len));
  for (std::size_t k = 0; k < num_bands; ++k) {
    double phase = (k % 2 == 0 ? 1.0 : -1.0) * std::numbers::pi / 4.0;
    double freq = (2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi /
                  (2.0 * static_cast<double>(num_bands));
    for (std::size_t n = 0; n < len; ++n) {
      double t = static_cast<double>(n) - mid;
      analysis[k][n] = 2.0 * prototype[n] * std::cos(freq * t + phase);
      synthesis[k][n] = 2.0 * prototype[n] * std::cos(freq * t - phase);
    }
  }
}

// Worst deviation from unit magnitude of the overall analysis-synthesis
// distortion response sum_k G_k(w) H_k(w).
double reconstruction_objective(std::size_t num_bands, std::size_t taps, double beta,
                                double cutoff) {
  Vec prototype = prototype_filter(taps, cutoff, beta);
  std::vector<Vec> analysis, synthesis;
  modulate(prototype, num_bands, analysis, synthesis);

  // Combined impulse response sum_k (h_k * g_k), length 2*taps + 1.
  Vec combined(2 * taps + 1, 0.0);
  for (std::size_t k = 0; k < num_bands; ++k)
    for (std::size_t i = 0; i <= taps; ++i)
      for (std::size_t j = 0; j <= taps; ++j)
        combined[i + j] += analysis[k][i] * synthesis[k][j];

  std::vector<double> mags = real_fft_magnitude(combined, kResponseGrid);
  double worst = 0.0;
  for (double m : mags) worst = std::max(worst, std::abs(m - 1.0));
  return worst;
}

}  // namespace

PqmfBank design_pqmf(std::size_t num_bands, std::size_t taps, double kaiser_beta) {
  if (num_bands < 2) fail("pqmf needs at least 2 bands");
  if (taps < 2 * num_bands || taps % 2 != 0)
    fail("pqmf taps must be even and at least twice the band count");
  if (!(kaiser_beta > 0.0)) fail("pqmf kaiser beta must be positive");

  auto objective = [&](double cutoff) {
    return reconstruction_objective(num_bands, taps, kaiser_beta, cutoff);
  };

  // Golden-section search on the prototype cutoff.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double hi_limit = 1.0 / (2.0 * static_cast<double>(num_bands));
  double a = 1e-4 * hi_limit;
  double b = hi_limit * (1.0 - 1e-4);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 80 && (b - a) > 1e-10; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double cutoff = (a + b) / 2.0;
  double residual = objective(cutoff);
  if (!std::isfinite(residual) || residual > 0.5)
    fail("pqmf design failed to find a usable cutoff for taps=" + std::to_string(taps) +
         " beta=" + std::to_string(kaiser_beta));

  PqmfBank bank;
  bank.num_bands = num_bands;
  bank.taps = taps;
  bank.kaiser_beta = kaiser_beta;
  bank.cutoff = cutoff;
  Vec prototype = prototype_filter(taps, cutoff, kaiser_beta);
  modulate(prototype, num_bands, bank.analysis_filters, bank.synthesis_filters);
  return bank;
}

std::vector<Vec> pqmf_analyze(const PqmfBank& bank, const AudioBuffer& audio) {
  if (audio.samples.empty()) fail("pqmf_analyze requires nonempty audio");
  const Vec& x = audio.samples;
  std::size_t m = bank.num_bands;
  std::size_t lead = bank.taps / 2;
  std::size_t out_len = (x.size() + m - 1) / m;

  // x is padded with taps/2 leading zeros; sample i of the padded signal
  // is x[i - lead].
  auto padded = [&](std::ptrdiff_t i) -> double {
    std::ptrdiff_t j = i - static_cast<std::ptrdiff_t>(lead);
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(x.size())) return 0.0;
    return x[static_cast<std::size_t>(j)];
  };

  std::vector<Vec> subbands(m, Vec(out_len, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    const Vec& h = bank.analysis_filters[k];
    for (std::size_t s = 0; s < out_len; ++s) {
      auto n = static_cast<std::ptrdiff_t>(s * m);
      double acc = 0.0;
      for (std::size_t j = 0; j < h.size(); ++j)
        acc += h[j] * padded(n - static_cast<std::ptrdiff_t>(j));
      subbands[k][s] = acc;
    }
  }
  return subbands;
}

AudioBuffer pqmf_synthesize(const PqmfBank& bank, const std::vector<Vec>& subbands,
                            std::uint32_t sample_rate_hz) {
  if (subbands.size() != bank.num_bands)
    fail("pqmf_synthesize got " + std::to_string(subbands.size()) + " bands, bank has " +
         std::to_string(bank.num_bands));
  std::size_t rows = subbands.empty() ? 0 : subbands.front().size();
  for (const auto& row : subbands)
    if (row.size() != rows) fail("pqmf subband rows have unequal lengths");

  std::size_t m = bank.num_bands;
  std::size_t out_len = rows * m;
  AudioBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.assign(out_len, 0.0);

  double gain = static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Vec& g = bank.synthesis_filters[k];
    const Vec& band = subbands[k];
    // y_k[n] = sum_j g[j] * u[n - j], u = zero-stuffed band scaled by m;
    // only j with n - j a multiple of m contribute.
    for (std::size_t s = 0; s < rows; ++s) {
      double v = gain * band[s];
      if (v == 0.0) continue;
      std::size_t base = s * m;
      std::size_t j_hi = std::min(g.size() - 1, out_len - 1 - base);
      for (std::size_t j = 0; j <= j_hi; ++j) out.samples[base + j] += v * g[j];
    }
  }
  return out;
}

double pqmf_round_trip_snr_db(const PqmfBank& bank, const AudioBuffer& audio) {
  std::vector<Vec> subbands = pqmf_analyze(bank, audio);
  AudioBuffer rec = pqmf_synthesize(bank, subbands, audio.sample_rate_hz);

  std::size_t delay = bank.round_trip_delay();
  std::size_t trim = bank.taps;
  if (audio.samples.size() < 2 * trim + delay + 1)
    fail("audio too short for a pqmf round-trip measurement");

  // The reconstruction lags by `delay`, so its last `delay` samples have no
  // counterpart; keep the comparison inside the overlap.
  double signal = 0.0, error = 0.0;
  for (std::size_t i = trim; i + trim + delay < audio.samples.size(); ++i) {
    double ref = audio.samples[i];
    double hat = rec.samples[i + delay];
    signal += ref * ref;
    error += (ref - hat) * (ref - hat);
  }
  if (signal == 0.0) fail("pqmf round-trip needs a nonzero reference signal");
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

}  // namespace voxsel
