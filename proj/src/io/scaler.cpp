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

#include "featgan/io/scaler.hpp"

#include <stdexcept>
#include <string>

namespace featgan::io {

FeatureScaler::FeatureScaler(nn::RowVectorD min, nn::RowVectorD max, double margin)
    : min_(std::move(min)), max_(std::move(max)), margin_(margin) {
  if (min_.size() != max_.size()) {
    throw nn::DimensionError("scaler: min and max differ in length");
  }
  if (!(margin_ >= 0.0 && margin_ < 1.0)) {
    throw std::invalid_argument("scaler: margin must lie in [0, 1), got " + std::to_string(margin_));
  }
  const nn::Index d = min_.size();
  mid_.resize(d);
  gain_.resize(d);
  inv_gain_.resize(d);
  for (nn::Index i = 0; i < d; ++i) {
    if (max_(i) < min_(i)) {
      throw std::invalid_argument("scaler: max < min in dimension " + std::to_string(i));
    }
    mid_(i) = 0.5 * (min_(i) + max_(i));
    const double half = 0.5 * (max_(i) - min_(i));
    if (half > 0.0) {
      gain_(i) = (1.0 - margin_) / half;
      inv_gain_(i) = half / (1.0 - margin_);
    } else {
      // degenerate: everything maps to 0, and 0 maps back to the constant
      gain_(i) = 0.0;
      inv_gain_(i) = 0.0;
    }
  }
}

FeatureScaler FeatureScaler::fit(const nn::MatrixF& pool, double margin) {
  if (pool.rows() == 0 || pool.cols() == 0) {
    throw std::invalid_argument("fit_scaler: empty pool");
  }
  const nn::MatrixD x = pool.cast<double>();
  return FeatureScaler(x.colwise().minCoeff(), x.colwise().maxCoeff(), margin);
}

void FeatureScaler::check(nn::Index cols) const {
  if (cols != dims()) {
    throw nn::DimensionError("scaler fitted on " + std::to_string(dims()) + " dims, got " +
                             std::to_string(cols));
  }
}

}  // namespace featgan::io
