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

#ifndef FEATGAN_CLASSIFIER_REPORT_HPP
#define FEATGAN_CLASSIFIER_REPORT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace featgan::classifier {

struct SeedSummary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1)
  std::size_t runs = 0;
};

/// Needs at least two runs.
SeedSummary multi_seed_report(std::span<const double> accuracies);

/// "96.11 ± 0.08": accuracies as percentages with two decimals.
std::string format_summary(const SeedSummary& s);

/// Runs `run(seed)` per seed and summarizes the returned accuracies.
template <typename RunFn>
SeedSummary run_seeds(std::span<const std::uint64_t> seeds, RunFn&& run) {
  std::vector<double> acc;
  acc.reserve(seeds.size());
  for (auto s : seeds) {
    acc.push_back(run(s));
  }
  return multi_seed_report(acc);
}

}  // namespace featgan::classifier

#endif  // FEATGAN_CLASSIFIER_REPORT_HPP
