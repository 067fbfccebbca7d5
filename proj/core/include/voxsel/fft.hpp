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

#ifndef VOXSEL_FFT_HPP_
#define VOXSEL_FFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace voxsel {

// Forward DFT of arbitrary length: radix-2 in place for powers of two,
// Bluestein's chirp-z otherwise (the subband analysis settings use sizes
// like 683 and 171). No normalization on the forward transform.
void fft(std::vector<std::complex<double>>& data);

// Inverse DFT with 1/N normalization.
void ifft(std::vector<std::complex<double>>& data);

// Magnitudes of the one-sided spectrum (n/2 + 1 bins for even n,
// (n+1)/2 bins for odd n) of a real signal zero-padded to size n.
std::vector<double> real_fft_magnitude(std::span<const double> signal, std::size_t n);

}  // namespace voxsel

#endif  // VOXSEL_FFT_HPP_
