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

#ifndef FEATGAN_NN_LOSS_HPP
#define FEATGAN_NN_LOSS_HPP

#include <cmath>
#include <span>
#include <string>

#include "featgan/nn/matrix.hpp"

namespace featgan::nn {

enum class LossKind { kMse, kL1, kCrossEntropy };

/// Batch-mean loss value and its gradient w.r.t. the prediction.
template <typename Scalar>
struct LossResult {
  double value = 0.0;
  Matrix<Scalar> grad;
};

// MSE and L1 average over every element; cross-entropy averages over rows.

template <typename Scalar>
LossResult<Scalar> mse_loss(const Matrix<Scalar>& pred, const Matrix<Scalar>& target) {
  require_same_shape(pred, target, "mse_loss");
  const double n = static_cast<double>(pred.size());
  Matrix<Scalar> diff = pred - target;
  LossResult<Scalar> r;
  r.value = diff.template cast<double>().squaredNorm() / n;
  r.grad = diff * static_cast<Scalar>(2.0 / n);
  return r;
}

/// MSE against a constant label (the least-squares GAN targets 0 and 1).
template <typename Scalar>
LossResult<Scalar> mse_loss(const Matrix<Scalar>& pred, Scalar label) {
  return mse_loss<Scalar>(pred, Matrix<Scalar>::Constant(pred.rows(), pred.cols(), label));
}

template <typename Scalar>
LossResult<Scalar> l1_loss(const Matrix<Scalar>& pred, const Matrix<Scalar>& target) {
  require_same_shape(pred, target, "l1_loss");
  const double n = static_cast<double>(pred.size());
  Matrix<Scalar> diff = pred - target;
  LossResult<Scalar> r;
  r.value = diff.template cast<double>().cwiseAbs().sum() / n;
  // sign(0) = 0: subgradient at the kink.
  r.grad = diff.unaryExpr([n](Scalar d) {
    return static_cast<Scalar>(d > Scalar(0) ? 1.0 / n : (d < Scalar(0) ? -1.0 / n : 0.0));
  });
  return r;
}

/// Row-wise softmax with max subtraction.
template <typename Scalar>
Matrix<Scalar> softmax(const Matrix<Scalar>& logits) {
  Matrix<Scalar> p = logits.colwise() - logits.rowwise().maxCoeff();
  p = p.array().exp().matrix();
  p.array().colwise() /= p.rowwise().sum().array();
  return p;
}

/// Softmax cross-entropy with one class index per row.
template <typename Scalar>
LossResult<Scalar> cross_entropy_loss(const Matrix<Scalar>& logits, std::span<const int> labels) {
  if (static_cast<Index>(labels.size()) != logits.rows()) {
    throw DimensionError("cross_entropy_loss: " + std::to_string(labels.size()) +
                         " labels for logits " + shape_string(logits.rows(), logits.cols()));
  }
  const Index batch = logits.rows();
  LossResult<Scalar> r;
  r.grad = softmax(logits);
  double total = 0.0;
  for (Index i = 0; i < batch; ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    if (y < 0 || y >= logits.cols()) {
      throw std::out_of_range("cross_entropy_loss: class index " + std::to_string(y) +
                              " outside [0, " + std::to_string(logits.cols()) + ")");
    }
    // log-sum-exp in double for the value
    const auto row = logits.row(i).template cast<double>();
    const double mx = row.maxCoeff();
    const double lse = mx + std::log((row.array() - mx).exp().sum());
    total += lse - row(y);
    r.grad(i, y) -= Scalar(1);
  }
  r.value = total / static_cast<double>(batch);
  r.grad /= static_cast<Scalar>(batch);
  return r;
}

/// Cross-entropy against per-row target distributions (e.g. one-hot rows).
template <typename Scalar>
LossResult<Scalar> cross_entropy_loss(const Matrix<Scalar>& logits, const Matrix<Scalar>& target) {
  require_same_shape(logits, target, "cross_entropy_loss");
  const Index batch = logits.rows();
  LossResult<Scalar> r;
  Matrix<Scalar> p = softmax(logits);
  double total = 0.0;
  for (Index i = 0; i < batch; ++i) {
    const auto row = logits.row(i).template cast<double>();
    const double mx = row.maxCoeff();
    const double lse = mx + std::log((row.array() - mx).exp().sum());
    const auto t = target.row(i).template cast<double>();
    total += (t.array() * (lse - row.array())).sum();
    p.row(i) *= static_cast<Scalar>(t.sum());
  }
  r.value = total / static_cast<double>(batch);
  r.grad = (p - target) / static_cast<Scalar>(batch);
  return r;
}

}  // namespace featgan::nn

#endif  // FEATGAN_NN_LOSS_HPP
