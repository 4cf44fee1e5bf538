// Copyright 2026 The featgan Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEATGAN_MFCC_FFT_HPP
#define FEATGAN_MFCC_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace featgan::mfcc {

bool is_power_of_two(std::size_t n);

/// In-place iterative radix-2 FFT (forward, unnormalized). The length must
/// be a power of two.
void fft_inplace(std::span<std::complex<double>> data);

/// |X[k]| for k = 0..fft_size/2 of the frame zero-padded to fft_size.
std::vector<double> magnitude_spectrum(std::span<const double> frame, std::size_t fft_size);

}  // namespace featgan::mfcc

#endif  // FEATGAN_MFCC_FFT_HPP
