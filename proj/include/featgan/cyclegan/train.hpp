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

#ifndef FEATGAN_CYCLEGAN_TRAIN_HPP
#define FEATGAN_CYCLEGAN_TRAIN_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgan/cyclegan/cyclegan.hpp"
#include "featgan/io/scaler.hpp"
#include "featgan/nn/adam.hpp"

namespace featgan::cyclegan {

struct TrainConfig {
  int epochs = 200;
  int batch = 128;
  double lr = 1e-5;
  double lambda_cyc = 10.0;
  double lambda_id = 0.5;
  std::uint64_t seed = 0;
  Index hidden = 512;
  double scaler_margin = 0.05;
  double beta1 = 0.5;
  double beta2 = 0.999;

  LossWeights weights() const { return {lambda_cyc, lambda_id}; }
  void validate() const;
};

/// Per-epoch means over the epoch's iterations.
struct EpochRecord {
  int epoch = 0;
  int steps = 0;
  DiscriminatorTerms disc;
  LossTerms gen;
};

struct Model {
  Networks<float> nets;
  io::FeatureScaler scaler;
  TrainConfig config;

  /// unscale(g_a(scale(x))) row by row; x holds raw pooled vectors.
  nn::MatrixF transform(const nn::MatrixF& raw) const;
};

class TrainingAborted : public std::runtime_error {
 public:
  TrainingAborted(const std::string& what, Model last_good, std::vector<EpochRecord> history)
      : std::runtime_error(what), last_good_(std::move(last_good)), history_(std::move(history)) {}
  const Model& last_good() const { return last_good_; }
  const std::vector<EpochRecord>& history() const { return history_; }

 private:
  Model last_good_;
  std::vector<EpochRecord> history_;
};

struct TrainResult {
  Model model;
  std::vector<EpochRecord> history;
};

/// Called after every completed epoch with the model as it stands.
using EpochCallback = std::function<void(const EpochRecord&, const Model&)>;

/// Iterations per epoch: ceil(max(|A|, |B|) / batch).
int steps_per_epoch(Index pool_a, Index pool_b, int batch);

/// Fits the scaler on pool_a and pool_b together, initializes fresh
/// networks and trains. Pools hold raw (unscaled) pooled vectors.
TrainResult train(const nn::MatrixF& pool_a, const nn::MatrixF& pool_b, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

/// Continues training `init` (its scaler must already be fitted).
TrainResult train(Model init, const nn::MatrixF& pool_a, const nn::MatrixF& pool_b,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = {});

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// Tab-separated per-epoch loss table.
std::string history_table(const std::vector<EpochRecord>& history);

}  // namespace featgan::cyclegan

#endif  // FEATGAN_CYCLEGAN_TRAIN_HPP
