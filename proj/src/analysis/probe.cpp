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

#include "featgan/analysis/probe.hpp"

#include <cmath>
#include <numeric>

#include "featgan/analysis/pca.hpp"

namespace featgan::analysis {

std::string_view to_string(ProbeSpace s) { return s == ProbeSpace::kRaw ? "raw" : "pca2"; }

namespace {

struct Split {
  nn::MatrixD train, test;
  std::vector<int> train_labels, test_labels;
};

void split_class(const nn::MatrixF& x, int label, double fraction, Rng& rng, std::vector<nn::RowVectorD>& train,
                 std::vector<int>& train_y, std::vector<nn::RowVectorD>& test, std::vector<int>& test_y) {
  std::vector<Index> idx(static_cast<std::size_t>(x.rows()));
  std::iota(idx.begin(), idx.end(), Index{0});
  rng.shuffle(idx);
  const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(idx.size())));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const nn::RowVectorD row = x.row(idx[i]).cast<double>();
    if (i < n_train) {
      train.push_back(row);
      train_y.push_back(label);
    } else {
      test.push_back(row);
      test_y.push_back(label);
    }
  }
}

nn::MatrixD stack(const std::vector<nn::RowVectorD>& rows, Index cols) {
  nn::MatrixD m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i];
  return m;
}

}  // namespace

ProbeResult separability_probe(const nn::MatrixF& real, const nn::MatrixF& synthetic, const ProbeConfig& cfg) {
  if (static_cast<std::size_t>(real.rows()) < kMinProbePoints ||
      static_cast<std::size_t>(synthetic.rows()) < kMinProbePoints) {
    throw InsufficientDataError("separability_probe: need at least " + std::to_string(kMinProbePoints) +
                                " points per domain, got " + std::to_string(real.rows()) + " real and " +
                                std::to_string(synthetic.rows()) + " synthetic");
  }
  if (real.cols() != synthetic.cols()) {
    throw nn::DimensionError("separability_probe: real and synthetic dims differ");
  }
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw std::invalid_argument("separability_probe: train_fraction must lie in (0, 1)");
  }
  Rng rng(derive_seed(cfg.seed, "probe/split"));
  std::vector<nn::RowVectorD> tr, te;
  std::vector<int> tr_y, te_y;
  split_class(real, 0, cfg.train_fraction, rng, tr, tr_y, te, te_y);
  split_class(synthetic, 1, cfg.train_fraction, rng, tr, tr_y, te, te_y);
  nn::MatrixD train = stack(tr, real.cols());
  nn::MatrixD test = stack(te, real.cols());

  if (cfg.space == ProbeSpace::kPca2) {
    const auto pca = pca_fit(train, std::min<Index>(2, train.cols()));
    train = pca_project(pca, train);
    test = pca_project(pca, test);
  }
  const nn::RowVectorD mu = train.colwise().mean();
  nn::RowVectorD sd =
      ((train.rowwise() - mu).array().square().colwise().sum() / static_cast<double>(train.rows())).sqrt().matrix();
  for (Index i = 0; i < sd.size(); ++i) {
    if (!(sd(i) > 0.0)) sd(i) = 1.0;
  }
  auto standardize = [&](const nn::MatrixD& x) {
    return nn::MatrixF(((x.rowwise() - mu).array().rowwise() / sd.array()).matrix().cast<float>());
  };

  classifier::LabeledSet train_set{standardize(train), tr_y};
  classifier::LabeledSet test_set{standardize(test), te_y};
  classifier::HeadTrainConfig head_cfg = cfg.head;
  head_cfg.seed = derive_seed(cfg.seed, "probe/head");
  const auto trained = classifier::train_head(train_set, {}, head_cfg, {"real", "synthetic"});
  const auto eval = classifier::evaluate(trained.head, test_set);

  ProbeResult r;
  const auto& cm = eval.confusion;
  const double real_total = static_cast<double>(cm[0][0] + cm[0][1]);
  const double synth_total = static_cast<double>(cm[1][0] + cm[1][1]);
  r.recall_real = static_cast<double>(cm[0][0]) / real_total;
  r.recall_synthetic = static_cast<double>(cm[1][1]) / synth_total;
  r.balanced_accuracy = 0.5 * (r.recall_real + r.recall_synthetic);
  r.train_size = tr_y.size();
  r.test_size = te_y.size();
  return r;
}

}  // namespace featgan::analysis
