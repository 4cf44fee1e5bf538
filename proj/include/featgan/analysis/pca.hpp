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

#ifndef FEATGAN_ANALYSIS_PCA_HPP
#define FEATGAN_ANALYSIS_PCA_HPP

#include <stdexcept>
#include <vector>

#include "featgan/nn/matrix.hpp"

namespace featgan::analysis {

using nn::Index;

class DegenerateDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PcaModel {
  nn::RowVectorD mean;
  nn::MatrixD components;              // k x D, orthonormal rows
  std::vector<double> eigenvalues;     // variance along each component
  std::vector<double> explained_ratio; // eigenvalue / total variance
  double total_variance = 0.0;         // trace of the covariance

  Index dims() const { return components.cols(); }
  Index k() const { return components.rows(); }
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 50000;
};

/// Top-k principal components of the rows of `data` from the 1/(n-1)
/// covariance, extracted one at a time by power iteration with deflation.
/// Each component's largest-magnitude entry is made positive.
PcaModel pca_fit(const nn::MatrixD& data, Index k, const PowerIterationOptions& opts = {});

template <typename Derived>
PcaModel pca_fit(const Eigen::MatrixBase<Derived>& data, Index k, const PowerIterationOptions& opts = {}) {
  return pca_fit(nn::MatrixD(data.template cast<double>()), k, opts);
}

/// components * (x - mean) for every row of x; returns n x k.
nn::MatrixD pca_project(const PcaModel& model, const nn::MatrixD& x);

/// Inverse of pca_project on the retained subspace.
nn::MatrixD pca_reconstruct(const PcaModel& model, const nn::MatrixD& z);

}  // namespace featgan::analysis

#endif  // FEATGAN_ANALYSIS_PCA_HPP
