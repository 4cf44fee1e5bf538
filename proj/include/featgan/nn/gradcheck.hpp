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

#ifndef FEATGAN_NN_GRADCHECK_HPP
#define FEATGAN_NN_GRADCHECK_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "featgan/nn/linear.hpp"

namespace featgan::nn {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t checked = 0;
};

/// |a - n| / max(|a|, |n|, floor). Below `floor` the comparison degrades
/// to an absolute one so that near-zero gradients do not dominate.
inline double gradient_rel_error(double analytic, double numeric, double floor = 1e-3) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

/// Compares the gradients already stored in `params[*].grad` against
/// central differences of `loss` (which must read the parameter values and
/// must not touch the gradient buffers). Runs in double precision.
template <typename LossFn>
GradCheckResult check_gradients(std::span<const ParamRef<double>> params, LossFn&& loss,
                                double step = 1e-3, double floor = 1e-3) {
  GradCheckResult result;
  for (const auto& p : params) {
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double saved = p.value[i];
      p.value[i] = saved + step;
      const double up = loss();
      p.value[i] = saved - step;
      const double down = loss();
      p.value[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double err = gradient_rel_error(p.grad[i], numeric, floor);
      ++result.checked;
      if (err > result.max_rel_error || result.checked == 1) {
        result.max_rel_error = err;
        result.worst_param = p.name;
        result.worst_index = i;
        result.analytic = p.grad[i];
        result.numeric = numeric;
      }
    }
  }
  return result;
}

template <typename LossFn>
GradCheckResult check_gradients(const std::vector<ParamRef<double>>& params, LossFn&& loss,
                                double step = 1e-3, double floor = 1e-3) {
  return check_gradients(std::span<const ParamRef<double>>(params.data(), params.size()),
                         std::forward<LossFn>(loss), step, floor);
}

}  // namespace featgan::nn

#endif  // FEATGAN_NN_GRADCHECK_HPP
