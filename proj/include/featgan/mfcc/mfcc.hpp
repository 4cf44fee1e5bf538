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

#ifndef FEATGAN_MFCC_MFCC_HPP
#define FEATGAN_MFCC_MFCC_HPP

#include <stdexcept>
#include <vector>

#include "featgan/io/fseq.hpp"
#include "featgan/io/wav.hpp"
#include "featgan/nn/matrix.hpp"

namespace featgan::mfcc {

using io::AudioClip;

class MfccError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MfccConfig {
  int sample_rate = 16000;
  int n_coeffs = 64;
  int n_mels = 64;
  int frame_length = 400;  // 25 ms
  int hop = 160;           // 10 ms
  int fft_size = 512;
  double fmin = 0.0;
  double fmax = 8000.0;
  double preemphasis = 0.97;
  double log_floor = 1e-10;

  /// Throws MfccError naming the first violated constraint.
  void validate() const;
};

/// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular filters on the HTK mel scale, [n_mels x (fft_size/2 + 1)].
/// Filter m rises from mel point m to m+1 and falls to m+2, where the
/// n_mels + 2 points are equally spaced between fmin and fmax.
nn::MatrixD mel_filterbank(const MfccConfig& cfg);

/// Center frequency (Hz) of every mel filter.
std::vector<double> mel_centers(const MfccConfig& cfg);

/// Orthonormal DCT-II, [n_out x n_in]; rows are basis vectors.
nn::MatrixD dct_matrix(int n_out, int n_in);

/// Symmetric Hann window 0.5 - 0.5 cos(2 pi n / (N - 1)).
std::vector<double> hann_window(int length);

/// 1 + floor((n - frame_length) / hop), or 0 if the clip is too short.
nn::Index frame_count(std::size_t samples, const MfccConfig& cfg);

/// Per-frame mel filterbank energies (before the log).
nn::MatrixD mel_energies(const AudioClip& clip, const MfccConfig& cfg);

/// pre-emphasis -> Hann framing -> |FFT| -> mel filterbank -> log -> DCT-II.
nn::MatrixF mfcc(const AudioClip& clip, const MfccConfig& cfg);

}  // namespace featgan::mfcc

#endif  // FEATGAN_MFCC_MFCC_HPP
