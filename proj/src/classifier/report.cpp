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

#include "featgan/classifier/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace featgan::classifier {

SeedSummary multi_seed_report(std::span<const double> accuracies) {
  if (accuracies.size() < 2) {
    throw std::invalid_argument("multi_seed_report: standard deviation needs at least 2 runs, got " +
                                std::to_string(accuracies.size()));
  }
  SeedSummary s;
  s.runs = accuracies.size();
  for (double a : accuracies) s.mean += a;
  s.mean /= static_cast<double>(s.runs);
  double ss = 0.0;
  for (double a : accuracies) ss += (a - s.mean) * (a - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(s.runs - 1));
  return s;
}

std::string format_summary(const SeedSummary& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f \xC2\xB1 %.2f", 100.0 * s.mean, 100.0 * s.std);
  return buf;
}

}  // namespace featgan::classifier
