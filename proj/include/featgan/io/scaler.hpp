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

#ifndef FEATGAN_IO_SCALER_HPP
#define FEATGAN_IO_SCALER_HPP

#include "featgan/nn/matrix.hpp"

namespace featgan::io {

/// Per-dimension affine map of [min, max] onto [-1 + margin, 1 - margin].
/// Dimensions with max == min map to 0 and unscale back to the constant.
/// Values outside the fitted range extrapolate linearly.
class FeatureScaler {
 public:
  FeatureScaler() = default;
  FeatureScaler(nn::RowVectorD min, nn::RowVectorD max, double margin);

  /// Fits min/max over the rows of `pool`.
  static FeatureScaler fit(const nn::MatrixF& pool, double margin);

  nn::Index dims() const { return min_.size(); }
  double margin() const { return margin_; }
  const nn::RowVectorD& min() const { return min_; }
  const nn::RowVectorD& max() const { return max_; }
  bool empty() const { return min_.size() == 0; }

  template <typename Scalar>
  nn::Matrix<Scalar> scale(const nn::Matrix<Scalar>& x) const {
    check(x.cols());
    nn::MatrixD y = x.template cast<double>();
    y.rowwise() -= mid_;
    y.array().rowwise() *= gain_.array();
    return y.template cast<Scalar>();
  }

  template <typename Scalar>
  nn::Matrix<Scalar> unscale(const nn::Matrix<Scalar>& y) const {
    check(y.cols());
    nn::MatrixD x = y.template cast<double>();
    x.array().rowwise() *= inv_gain_.array();
    x.rowwise() += mid_;
    return x.template cast<Scalar>();
  }

 private:
  void check(nn::Index cols) const;

  nn::RowVectorD min_, max_;
  double margin_ = 0.0;
  nn::RowVectorD mid_, gain_, inv_gain_;
};

}  // namespace featgan::io

#endif  // FEATGAN_IO_SCALER_HPP
