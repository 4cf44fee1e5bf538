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

#ifndef FEATGAN_ANALYSIS_PROBE_HPP
#define FEATGAN_ANALYSIS_PROBE_HPP

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "featgan/classifier/head.hpp"
#include "featgan/nn/matrix.hpp"

namespace featgan::analysis {

enum class ProbeSpace { kRaw, kPca2 };

std::string_view to_string(ProbeSpace s);

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProbeConfig {
  ProbeSpace space = ProbeSpace::kRaw;
  double train_fraction = 0.8;
  classifier::HeadTrainConfig head;
  std::uint64_t seed = 0;
};

struct ProbeResult {
  double balanced_accuracy = 0.0;
  double recall_real = 0.0;
  double recall_synthetic = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

inline constexpr std::size_t kMinProbePoints = 20;

/// Stratified 80/20 split, z-scored features (statistics from the
/// training part), linear head trained real-vs-synthetic, balanced
/// accuracy on the held-out part. In pca2 space the PCA is fitted on the
/// training part only.
ProbeResult separability_probe(const nn::MatrixF& real, const nn::MatrixF& synthetic, const ProbeConfig& cfg);

}  // namespace featgan::analysis

#endif  // FEATGAN_ANALYSIS_PROBE_HPP
