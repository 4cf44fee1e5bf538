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

#ifndef FEATGAN_NN_LINEAR_HPP
#define FEATGAN_NN_LINEAR_HPP

#include <cmath>
#include <span>
#include <string>

#include "featgan/nn/matrix.hpp"
#include "featgan/nn/random.hpp"

namespace featgan::nn {

/// View of one trainable tensor and its gradient buffer, flattened.
template <typename Scalar>
struct ParamRef {
  std::string name;
  std::span<Scalar> value;
  std::span<Scalar> grad;
};

/// Dense affine layer y = x W^T + b, with W stored [out x in].
template <typename Scalar>
class LinearLayer {
 public:
  using MatrixType = Matrix<Scalar>;
  using RowVectorType = RowVector<Scalar>;

  LinearLayer() = default;
  LinearLayer(Index in_dim, Index out_dim)
      : weight_(MatrixType::Zero(out_dim, in_dim)),
        bias_(RowVectorType::Zero(out_dim)),
        weight_grad_(MatrixType::Zero(out_dim, in_dim)),
        bias_grad_(RowVectorType::Zero(out_dim)) {}

  /// Weights uniform in [-sqrt(1/in), sqrt(1/in)], biases zero.
  void init_fan_in(Rng& rng) {
    const double bound = std::sqrt(1.0 / static_cast<double>(in_dim()));
    for (Index i = 0; i < weight_.size(); ++i) {
      weight_.data()[i] = static_cast<Scalar>(rng.uniform(-bound, bound));
    }
    bias_.setZero();
  }

  Index in_dim() const { return weight_.cols(); }
  Index out_dim() const { return weight_.rows(); }

  MatrixType& weight() { return weight_; }
  const MatrixType& weight() const { return weight_; }
  RowVectorType& bias() { return bias_; }
  const RowVectorType& bias() const { return bias_; }
  const MatrixType& weight_grad() const { return weight_grad_; }
  const RowVectorType& bias_grad() const { return bias_grad_; }

  MatrixType apply(const MatrixType& x) const {
    if (x.cols() != in_dim()) {
      throw DimensionError("linear_forward: input " + shape_string(x.rows(), x.cols()) +
                           " incompatible with weight " +
                           shape_string(weight_.rows(), weight_.cols()));
    }
    MatrixType y(x.rows(), out_dim());
    y.noalias() = x * weight_.transpose();
    y.rowwise() += bias_;
    return y;
  }

  /// Forward pass that caches its input for backward().
  MatrixType forward(const MatrixType& x) {
    MatrixType y = apply(x);
    cache_ = x;
    has_cache_ = true;
    return y;
  }

  /// Consumes the cached input; a second call without forward() throws.
  MatrixType backward(const MatrixType& dy) {
    if (!has_cache_) {
      throw StaleCacheError("linear backward called without a preceding forward");
    }
    has_cache_ = false;
    return backward_from(cache_, dy, true);
  }

  /// Gradient w.r.t. the input for an explicit input x. Parameter gradients
  /// are accumulated when accumulate_params is set.
  MatrixType backward_from(const MatrixType& x, const MatrixType& dy, bool accumulate_params) {
    if (dy.cols() != out_dim() || dy.rows() != x.rows() || x.cols() != in_dim()) {
      throw DimensionError("linear backward: grad " + shape_string(dy.rows(), dy.cols()) +
                           " vs input " + shape_string(x.rows(), x.cols()) + " and weight " +
                           shape_string(weight_.rows(), weight_.cols()));
    }
    if (accumulate_params) {
      weight_grad_.noalias() += dy.transpose() * x;
      bias_grad_ += dy.colwise().sum();
    }
    MatrixType dx(x.rows(), in_dim());
    dx.noalias() = dy * weight_;
    return dx;
  }

  void zero_grad() {
    weight_grad_.setZero();
    bias_grad_.setZero();
  }

  void append_parameters(const std::string& prefix, std::vector<ParamRef<Scalar>>& out) {
    out.push_back({prefix + ".weight", {weight_.data(), static_cast<std::size_t>(weight_.size())},
                   {weight_grad_.data(), static_cast<std::size_t>(weight_grad_.size())}});
    out.push_back({prefix + ".bias", {bias_.data(), static_cast<std::size_t>(bias_.size())},
                   {bias_grad_.data(), static_cast<std::size_t>(bias_grad_.size())}});
  }

  template <typename Other>
  LinearLayer<Other> cast() const {
    LinearLayer<Other> out(in_dim(), out_dim());
    out.weight() = weight_.template cast<Other>();
    out.bias() = bias_.template cast<Other>();
    return out;
  }

 private:
  MatrixType weight_;
  RowVectorType bias_;
  MatrixType weight_grad_;
  RowVectorType bias_grad_;
  MatrixType cache_;
  bool has_cache_ = false;
};

}  // namespace featgan::nn

#endif  // FEATGAN_NN_LINEAR_HPP
