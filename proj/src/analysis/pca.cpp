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

#include "featgan/analysis/pca.hpp"

#include <cmath>
#include <string>

#include "featgan/nn/random.hpp"

namespace featgan::analysis {

namespace {

void orthogonalize(Eigen::VectorXd& v, const nn::MatrixD& basis, Index count) {
  for (Index j = 0; j < count; ++j) {
    const Eigen::VectorXd b = basis.row(j).transpose();
    v -= b.dot(v) * b;
  }
}

}  // namespace

PcaModel pca_fit(const nn::MatrixD& data, Index k, const PowerIterationOptions& opts) {
  const Index n = data.rows();
  const Index d = data.cols();
  if (n < 2) {
    throw std::invalid_argument("pca_fit: need at least 2 points, got " + std::to_string(n));
  }
  if (k < 1 || k > d) {
    throw std::invalid_argument("pca_fit: k=" + std::to_string(k) + " must lie in [1, " + std::to_string(d) + "]");
  }
  if ((data.rowwise() - data.row(0)).isZero(0.0)) {
    throw DegenerateDataError("pca_fit: all points are identical (zero covariance)");
  }

  PcaModel m;
  m.mean = data.colwise().mean();
  const nn::MatrixD centered = data.rowwise() - m.mean;
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  m.total_variance = cov.trace();
  if (!(m.total_variance > 0.0)) {
    throw DegenerateDataError("pca_fit: zero total variance");
  }

  m.components.resize(k, d);
  Rng rng(0x5eedf00dULL);
  // below this norm the deflated operator has nothing left but rounding
  const double null_norm = 1e-13 * m.total_variance;
  for (Index c = 0; c < k; ++c) {
    Eigen::VectorXd v(d);
    for (Index i = 0; i < d; ++i) v(i) = rng.normal();
    orthogonalize(v, m.components, c);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
      Eigen::VectorXd w = cov * v;
      orthogonalize(w, m.components, c);
      const double norm = w.norm();
      if (norm < null_norm) {
        break;  // v already spans part of the null space
      }
      w /= norm;
      const double delta = (w - v).norm();
      v = w;
      if (delta < opts.tolerance) {
        break;
      }
    }
    // re-orthogonalize against rounding drift
    orthogonalize(v, m.components, c);
    v.normalize();
    lambda = std::max(0.0, v.dot(cov * v));
    Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    m.components.row(c) = v.transpose();
    m.eigenvalues.push_back(lambda);
    m.explained_ratio.push_back(lambda / m.total_variance);
    cov -= lambda * v * v.transpose();
  }
  return m;
}

nn::MatrixD pca_project(const PcaModel& model, const nn::MatrixD& x) {
  if (x.cols() != model.dims()) {
    throw nn::DimensionError("pca_project: model dim " + std::to_string(model.dims()) + ", input " +
                             nn::shape_string(x.rows(), x.cols()));
  }
  return (x.rowwise() - model.mean) * model.components.transpose();
}

nn::MatrixD pca_reconstruct(const PcaModel& model, const nn::MatrixD& z) {
  if (z.cols() != model.k()) {
    throw nn::DimensionError("pca_reconstruct: expected " + std::to_string(model.k()) + " coordinates");
  }
  nn::MatrixD x = z * model.components;
  x.rowwise() += model.mean;
  return x;
}

}  // namespace featgan::analysis
