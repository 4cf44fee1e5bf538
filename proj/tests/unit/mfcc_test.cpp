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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "featgan/mfcc/fft.hpp"
#include "featgan/mfcc/mfcc.hpp"
#include "support/test_support.hpp"

namespace featgan::mfcc {
namespace {

using nn::Index;
using nn::MatrixD;
using nn::MatrixF;

AudioClip tone(double hz, std::size_t n, double amp = 0.5) {
  AudioClip c;
  c.sample_rate = 16000;
  c.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.samples[i] = static_cast<float>(amp * std::sin(2 * std::numbers::pi * hz * static_cast<double>(i) / 16000.0));
  }
  return c;
}

TEST(Fft, ParsevalOnRandomInputs) {
  Rng rng(21);
  for (std::size_t n : {2u, 8u, 64u, 512u, 4096u}) {
    std::vector<std::complex<double>> x(n);
    double time_energy = 0.0;
    for (auto& v : x) {
      v = {rng.normal(), rng.normal()};
      time_energy += std::norm(v);
    }
    fft_inplace(x);
    double freq_energy = 0.0;
    for (const auto& v : x) freq_energy += std::norm(v);
    EXPECT_NEAR(freq_energy / static_cast<double>(n), time_energy, 1e-4 * time_energy) << n;
  }
}

TEST(Fft, MatchesNaiveDft) {
  Rng rng(5);
  const std::size_t n = 32;
  std::vector<std::complex<double>> x(n);
  for (auto& v : x) v = {rng.normal(), 0.0};
  auto y = x;
  fft_inplace(y);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < n; ++t) {
      acc += x[t] * std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(k * t) / n);
    }
    EXPECT_LT(std::abs(acc - y[k]), 1e-10);
  }
}

TEST(Fft, RejectsNonPowerOfTwo) {
  std::vector<std::complex<double>> x(12);
  EXPECT_THROW(fft_inplace(x), std::invalid_argument);
  EXPECT_TRUE(is_power_of_two(512));
  EXPECT_FALSE(is_power_of_two(400));
}

TEST(Mfcc, SilenceGivesConstantLogMel) {
  MfccConfig cfg;
  AudioClip silence;
  silence.sample_rate = 16000;
  silence.samples.assign(16000, 0.0f);
  const MatrixF c = mfcc(silence, cfg);
  EXPECT_EQ(c.rows(), 98);
  EXPECT_EQ(c.cols(), 64);
  // Orthonormal DCT of the constant log(eps) over 64 mels.
  const double c0 = std::log(cfg.log_floor) * std::sqrt(64.0);
  for (Index t = 0; t < c.rows(); ++t) {
    EXPECT_NEAR(c(t, 0), c0, 1e-4 * std::abs(c0));
    EXPECT_LT(c.row(t).tail(63).cwiseAbs().maxCoeff(), 1e-4f);
  }
}

TEST(Mfcc, OneKilohertzPeaksInNearestFilter) {
  MfccConfig cfg;
  const MatrixD e = mel_energies(tone(1000.0, 8000), cfg);
  const auto centers = mel_centers(cfg);
  std::size_t nearest = 0;
  for (std::size_t m = 1; m < centers.size(); ++m) {
    if (std::abs(centers[m] - 1000.0) < std::abs(centers[nearest] - 1000.0)) nearest = m;
  }
  for (Index t = 0; t < e.rows(); ++t) {
    Index arg = 0;
    e.row(t).maxCoeff(&arg);
    EXPECT_EQ(static_cast<std::size_t>(arg), nearest) << "frame " << t;
  }
}

TEST(Mfcc, MatchesScriptedReference) {
  std::istringstream in(testing::read_text(testing::data_path("mfcc_reference.txt")));
  Index rows = 0, cols = 0;
  in >> rows >> cols;
  MatrixD ref(rows, cols);
  for (Index i = 0; i < ref.size(); ++i) in >> ref.data()[i];
  const MatrixF c = mfcc(testing::reference_clip(), MfccConfig{});
  ASSERT_EQ(c.rows(), rows);
  ASSERT_EQ(c.cols(), cols);
  double worst = 0.0;
  for (Index i = 0; i < ref.size(); ++i) {
    worst = std::max(worst, std::abs(c.data()[i] - ref.data()[i]));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Mfcc, FrameCountHasNoPadding) {
  MfccConfig cfg;
  EXPECT_EQ(frame_count(399, cfg), 0);
  EXPECT_EQ(frame_count(400, cfg), 1);
  EXPECT_EQ(frame_count(559, cfg), 1);
  EXPECT_EQ(frame_count(560, cfg), 2);
  EXPECT_EQ(frame_count(16000, cfg), 98);
}

TEST(Mfcc, ScalingInputShiftsOnlyFirstCoefficient) {
  // log(10 x) = log x + log 10 on every mel band, which the orthonormal DCT
  // sends entirely to c0. Broadband noise keeps every band well above the
  // floor and above single-precision FFT leakage.
  MfccConfig cfg;
  auto clip = testing::reference_clip();
  Rng rng(4);
  for (auto& s : clip.samples) s += static_cast<float>(0.05 * rng.normal());
  auto loud = clip;
  for (auto& s : loud.samples) s *= 10.0f;
  const MatrixF a = mfcc(clip, cfg);
  const MatrixF b = mfcc(loud, cfg);
  for (Index t = 0; t < a.rows(); ++t) {
    EXPECT_NEAR(b(t, 0) - a(t, 0), std::log(10.0) * 8.0, 1e-3);
    EXPECT_LT((b.row(t).tail(63) - a.row(t).tail(63)).cwiseAbs().maxCoeff(), 1e-3f);
  }
}

TEST(Filterbank, TriangularNonNegativeOverlappingAndCovering) {
  MfccConfig cfg;
  const MatrixD fb = mel_filterbank(cfg);
  EXPECT_EQ(fb.rows(), 64);
  EXPECT_EQ(fb.cols(), 257);
  EXPECT_GE(fb.minCoeff(), 0.0);
  EXPECT_LE(fb.maxCoeff(), 1.0);
  for (Index m = 0; m < fb.rows(); ++m) {
    // Single peak: non-decreasing up to the argmax, non-increasing after.
    Index peak = 0;
    fb.row(m).maxCoeff(&peak);
    for (Index k = 1; k <= peak; ++k) EXPECT_GE(fb(m, k), fb(m, k - 1));
    for (Index k = peak + 1; k < fb.cols(); ++k) EXPECT_LE(fb(m, k), fb(m, k - 1));
  }
  // Adjacent triangles overlap in frequency: filter m+1 starts where m peaks.
  const auto centers = mel_centers(cfg);
  for (std::size_t m = 0; m + 1 < centers.size(); ++m) EXPECT_LT(centers[m], centers[m + 1]);
  const MatrixD coarse = mel_filterbank(MfccConfig{.n_coeffs = 20, .n_mels = 26});
  for (Index m = 0; m + 1 < coarse.rows(); ++m) {
    EXPECT_GT((coarse.row(m).array() * coarse.row(m + 1).array()).sum(), 0.0) << m;
  }
  // Every bin strictly inside (fmin, fmax) gets weight.
  for (Index k = 1; k < fb.cols() - 1; ++k) EXPECT_GT(fb.col(k).sum(), 0.0) << k;
}

TEST(Dct, OrthonormalRows) {
  const MatrixD d = dct_matrix(64, 64);
  EXPECT_LT((d * d.transpose() - MatrixD::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Hann, SymmetricWithZeroEndpoints) {
  const auto w = hann_window(400);
  EXPECT_EQ(w.front(), 0.0);
  EXPECT_NEAR(w.back(), 0.0, 1e-15);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], w[w.size() - 1 - i], 1e-12);
}

TEST(MfccConfig, ValidationRejectsBadSettings) {
  EXPECT_NO_THROW(MfccConfig{}.validate());
  EXPECT_THROW((MfccConfig{.n_coeffs = 80}.validate()), MfccError);
  EXPECT_THROW((MfccConfig{.fft_size = 500}.validate()), MfccError);
  EXPECT_THROW((MfccConfig{.fmax = 9000}.validate()), MfccError);
  EXPECT_THROW((MfccConfig{.fmin = 100, .fmax = 50}.validate()), MfccError);
  EXPECT_THROW((MfccConfig{.frame_length = 1024}.validate()), MfccError);
}

TEST(Mfcc, RejectsShortClipAndWrongRate) {
  AudioClip c = tone(440, 399);
  EXPECT_THROW(mfcc(c, MfccConfig{}), MfccError);
  c = tone(440, 1000);
  c.sample_rate = 8000;
  EXPECT_THROW(mfcc(c, MfccConfig{}), MfccError);
}

}  // namespace
}  // namespace featgan::mfcc
