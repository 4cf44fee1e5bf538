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

#ifndef FEATGAN_NN_ADAM_HPP
#define FEATGAN_NN_ADAM_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "featgan/nn/linear.hpp"

namespace featgan::nn {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adam with bias-corrected moments. Moment buffers are allocated on the
/// first step and must see the same parameter list on every later step.
template <typename Scalar>
class Adam {
 public:
  explicit Adam(AdamOptions options) : options_(options) {}

  const AdamOptions& options() const { return options_; }
  std::int64_t step_count() const { return step_; }

  void step(std::span<const ParamRef<Scalar>> params) {
    if (first_.empty()) {
      for (const auto& p : params) {
        first_.emplace_back(p.value.size(), Scalar(0));
        second_.emplace_back(p.value.size(), Scalar(0));
      }
    }
    if (first_.size() != params.size()) {
      throw DimensionError("adam_step: optimizer state tracks " + std::to_string(first_.size()) +
                           " parameters, got " + std::to_string(params.size()));
    }
    for (std::size_t k = 0; k < params.size(); ++k) {
      const auto& p = params[k];
      if (p.value.size() != first_[k].size() || p.grad.size() != p.value.size()) {
        throw DimensionError("adam_step: shape of " + p.name + " changed");
      }
      for (std::size_t i = 0; i < p.grad.size(); ++i) {
        if (!std::isfinite(p.grad[i])) {
          throw NonFiniteError("adam_step: non-finite gradient " + std::to_string(p.grad[i]) +
                               " in " + p.name + " at element " + std::to_string(i));
        }
      }
    }

    ++step_;
    const double b1 = options_.beta1;
    const double b2 = options_.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
    const Scalar lr = static_cast<Scalar>(options_.lr);
    const Scalar eps = static_cast<Scalar>(options_.eps);
    const Scalar sb1 = static_cast<Scalar>(b1), sb2 = static_cast<Scalar>(b2);
    const Scalar inv_c1 = static_cast<Scalar>(1.0 / c1), inv_c2 = static_cast<Scalar>(1.0 / c2);

    for (std::size_t k = 0; k < params.size(); ++k) {
      auto& m = first_[k];
      auto& v = second_[k];
      const auto& p = params[k];
      for (std::size_t i = 0; i < p.value.size(); ++i) {
        const Scalar g = p.grad[i];
        m[i] = sb1 * m[i] + (Scalar(1) - sb1) * g;
        v[i] = sb2 * v[i] + (Scalar(1) - sb2) * g * g;
        const Scalar m_hat = m[i] * inv_c1;
        const Scalar v_hat = v[i] * inv_c2;
        p.value[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
      }
    }
  }

  void step(const std::vector<ParamRef<Scalar>>& params) {
    step(std::span<const ParamRef<Scalar>>(params.data(), params.size()));
  }

 private:
  AdamOptions options_;
  std::int64_t step_ = 0;
  std::vector<std::vector<Scalar>> first_;
  std::vector<std::vector<Scalar>> second_;
};

}  // namespace featgan::nn

#endif  // FEATGAN_NN_ADAM_HPP
