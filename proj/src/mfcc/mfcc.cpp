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

#include "featgan/mfcc/mfcc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "featgan/mfcc/fft.hpp"

namespace featgan::mfcc {

void MfccConfig::validate() const {
  auto fail = [](const std::string& msg) { throw MfccError("mfcc config: " + msg); };
  if (sample_rate <= 0) fail("sample_rate must be positive");
  if (n_coeffs < 1) fail("n_coeffs must be >= 1");
  if (fft_size < 2 || !is_power_of_two(static_cast<std::size_t>(fft_size))) {
    fail("fft_size must be a power of two");
  }
  if (n_coeffs > n_mels) fail("n_coeffs > n_mels");
  if (n_mels > fft_size / 2 + 1) fail("n_mels > fft_size/2 + 1");
  if (frame_length < 1 || frame_length > fft_size) fail("frame_length must lie in [1, fft_size]");
  if (hop < 1) fail("hop must be >= 1");
  if (!(fmin >= 0.0 && fmin < fmax)) fail("need 0 <= fmin < fmax");
  if (fmax > sample_rate / 2.0) fail("fmax above Nyquist");
  if (!(log_floor > 0.0)) fail("log_floor must be positive");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

std::vector<double> mel_points_hz(const MfccConfig& cfg) {
  const double lo = hz_to_mel(cfg.fmin);
  const double hi = hz_to_mel(cfg.fmax);
  std::vector<double> pts(static_cast<std::size_t>(cfg.n_mels) + 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(pts.size() - 1));
  }
  return pts;
}

}  // namespace

std::vector<double> mel_centers(const MfccConfig& cfg) {
  auto pts = mel_points_hz(cfg);
  return {pts.begin() + 1, pts.end() - 1};
}

nn::MatrixD mel_filterbank(const MfccConfig& cfg) {
  cfg.validate();
  const auto pts = mel_points_hz(cfg);
  const int bins = cfg.fft_size / 2 + 1;
  nn::MatrixD fb = nn::MatrixD::Zero(cfg.n_mels, bins);
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double left = pts[static_cast<std::size_t>(m)];
    const double center = pts[static_cast<std::size_t>(m) + 1];
    const double right = pts[static_cast<std::size_t>(m) + 2];
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * cfg.sample_rate / cfg.fft_size;
      const double up = (f - left) / (center - left);
      const double down = (right - f) / (right - center);
      fb(m, k) = std::max(0.0, std::min(up, down));
    }
  }
  return fb;
}

nn::MatrixD dct_matrix(int n_out, int n_in) {
  nn::MatrixD m(n_out, n_in);
  for (int k = 0; k < n_out; ++k) {
    const double s = k == 0 ? std::sqrt(1.0 / n_in) : std::sqrt(2.0 / n_in);
    for (int n = 0; n < n_in; ++n) {
      m(k, n) = s * std::cos(std::numbers::pi * k * (2.0 * n + 1.0) / (2.0 * n_in));
    }
  }
  return m;
}

std::vector<double> hann_window(int length) {
  std::vector<double> w(static_cast<std::size_t>(length), 1.0);
  if (length == 1) {
    return w;
  }
  for (int n = 0; n < length; ++n) {
    w[static_cast<std::size_t>(n)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / (length - 1));
  }
  return w;
}

nn::Index frame_count(std::size_t samples, const MfccConfig& cfg) {
  const auto len = static_cast<std::size_t>(cfg.frame_length);
  if (samples < len) {
    return 0;
  }
  return static_cast<nn::Index>(1 + (samples - len) / static_cast<std::size_t>(cfg.hop));
}

nn::MatrixD mel_energies(const AudioClip& clip, const MfccConfig& cfg) {
  cfg.validate();
  if (clip.sample_rate != cfg.sample_rate) {
    throw MfccError("mfcc: clip sample rate " + std::to_string(clip.sample_rate) + " != configured " +
                    std::to_string(cfg.sample_rate));
  }
  const nn::Index frames = frame_count(clip.samples.size(), cfg);
  if (frames < 1) {
    throw MfccError("mfcc: clip of " + std::to_string(clip.samples.size()) +
                    " samples is shorter than one frame (" + std::to_string(cfg.frame_length) + ")");
  }
  std::vector<double> emph(clip.samples.size());
  emph[0] = clip.samples[0];
  for (std::size_t i = 1; i < emph.size(); ++i) {
    emph[i] = static_cast<double>(clip.samples[i]) - cfg.preemphasis * static_cast<double>(clip.samples[i - 1]);
  }
  const auto window = hann_window(cfg.frame_length);
  const nn::MatrixD fb = mel_filterbank(cfg);
  const auto len = static_cast<std::size_t>(cfg.frame_length);

  nn::MatrixD spec(frames, cfg.fft_size / 2 + 1);
  std::vector<double> frame(len);
  for (nn::Index t = 0; t < frames; ++t) {
    const std::size_t start = static_cast<std::size_t>(t) * static_cast<std::size_t>(cfg.hop);
    for (std::size_t n = 0; n < len; ++n) {
      frame[n] = emph[start + n] * window[n];
    }
    const auto mag = magnitude_spectrum(frame, static_cast<std::size_t>(cfg.fft_size));
    spec.row(t) = Eigen::Map<const nn::RowVectorD>(mag.data(), static_cast<nn::Index>(mag.size()));
  }
  return spec * fb.transpose();
}

nn::MatrixF mfcc(const AudioClip& clip, const MfccConfig& cfg) {
  const nn::MatrixD energies = mel_energies(clip, cfg);
  const nn::MatrixD logmel = energies.cwiseMax(cfg.log_floor).array().log().matrix();
  const nn::MatrixD dct = dct_matrix(cfg.n_coeffs, cfg.n_mels);
  return (logmel * dct.transpose()).cast<float>();
}

}  // namespace featgan::mfcc
