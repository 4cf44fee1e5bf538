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

#ifndef FEATGAN_NN_ACTIVATION_HPP
#define FEATGAN_NN_ACTIVATION_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

#include "featgan/nn/matrix.hpp"

namespace featgan::nn {

enum class Activation : std::uint32_t { kIdentity = 0, kRelu = 1, kTanh = 2, kSigmoid = 3 };

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  if (x >= Scalar(0)) {
    return Scalar(1) / (Scalar(1) + std::exp(-x));
  }
  const Scalar e = std::exp(x);
  return e / (Scalar(1) + e);
}

template <typename Derived>
Matrix<typename Derived::Scalar> activate(Activation kind, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  switch (kind) {
    case Activation::kRelu:
      return x.cwiseMax(Scalar(0));
    case Activation::kTanh:
      return x.array().tanh().matrix();
    case Activation::kSigmoid:
      return x.unaryExpr([](Scalar v) { return sigmoid(v); });
    case Activation::kIdentity:
      break;
  }
  return x;
}

/// dL/dpre given the activation output and dL/dout.
template <typename Scalar>
Matrix<Scalar> activation_backward(Activation kind, const Matrix<Scalar>& out,
                                   const Matrix<Scalar>& dy) {
  require_same_shape(out, dy, "activation_backward");
  switch (kind) {
    case Activation::kRelu:
      return (out.array() > Scalar(0)).select(dy, Scalar(0));
    case Activation::kTanh:
      return (dy.array() * (Scalar(1) - out.array().square())).matrix();
    case Activation::kSigmoid:
      return (dy.array() * out.array() * (Scalar(1) - out.array())).matrix();
    case Activation::kIdentity:
      break;
  }
  return dy;
}

inline std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kIdentity:
      break;
  }
  return "identity";
}

}  // namespace featgan::nn

#endif  // FEATGAN_NN_ACTIVATION_HPP
