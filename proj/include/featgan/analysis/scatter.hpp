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

#ifndef FEATGAN_ANALYSIS_SCATTER_HPP
#define FEATGAN_ANALYSIS_SCATTER_HPP

#include <filesystem>
#include <span>
#include <string>

#include "featgan/io/labels.hpp"

namespace featgan::analysis {

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  io::Domain domain = io::Domain::kReal;
  std::string label;
};

/// "x\ty\tdomain\tlabel" header plus one row per point, fixed precision.
std::string scatter_table(std::span<const ScatterPoint> points);

/// Minimal standalone SVG scatter plot, one color per domain.
std::string scatter_svg(std::span<const ScatterPoint> points, const std::string& title);

/// Writes <prefix>.table and <prefix>.svg.
void scatter_emit(std::span<const ScatterPoint> points, const std::string& prefix, const std::string& title);

}  // namespace featgan::analysis

#endif  // FEATGAN_ANALYSIS_SCATTER_HPP
