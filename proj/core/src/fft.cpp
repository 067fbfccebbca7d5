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

#include "voxsel/fft.hpp"

#include <cmath>
#include <numbers>

namespace voxsel {
namespace {

using cd = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative Cooley-Tukey, n a power of two.
void fft_pow2(std::vector<cd>& a, bool inverse) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    cd wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        cd u = a[i + j];
        cd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein's chirp-z transform for general n, built on a padded
// power-of-two convolution.
void fft_bluestein(std::vector<cd>& a, bool inverse) {
  std::size_t n = a.size();
  double sign = inverse ? 1.0 : -1.0;

  // Chirp exp(sign * i * pi * k^2 / n); k^2 taken mod 2n to keep the
  // trig argument small and exact.
  std::vector<cd> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t k2 = (k * k) % (2 * n);
    double ang = std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cd(std::cos(ang), sign * std::sin(ang));
  }

  std::size_t m = next_power_of_two(2 * n - 1);
  std::vector<cd> p(m, cd(0.0, 0.0)), q(m, cd(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) p[k] = a[k] * chirp[k];
  q[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) q[k] = q[m - k] = std::conj(chirp[k]);

  fft_pow2(p, false);
  fft_pow2(q, false);
  for (std::size_t i = 0; i < m; ++i) p[i] *= q[i];
  fft_pow2(p, true);
  double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = p[k] * inv_m * chirp[k];
}

void transform(std::vector<cd>& a, bool inverse) {
  if (a.size() <= 1) return;
  if (is_power_of_two(a.size()))
    fft_pow2(a, inverse);
  else
    fft_bluestein(a, inverse);
  if (inverse) {
    double inv_n = 1.0 / static_cast<double>(a.size());
    for (auto& x : a) x *= inv_n;
  }
}

}  // namespace

void fft(std::vector<cd>& data) { transform(data, false); }

void ifft(std::vector<cd>& data) { transform(data, true); }

std::vector<double> real_fft_magnitude(std::span<const double> signal, std::size_t n) {
  std::vector<cd> buf(n, cd(0.0, 0.0));
  std::size_t m = std::min(signal.size(), n);
  for (std::size_t i = 0; i < m; ++i) buf[i] = cd(signal[i], 0.0);
  fft(buf);
  std::size_t bins = n / 2 + 1;
  std::vector<double> mag(bins);
  for (std::size_t b = 0; b < bins; ++b) mag[b] = std::abs(buf[b]);
  return mag;
}

}  // namespace voxsel
