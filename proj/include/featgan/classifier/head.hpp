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

#ifndef FEATGAN_CLASSIFIER_HEAD_HPP
#define FEATGAN_CLASSIFIER_HEAD_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "featgan/cyclegan/train.hpp"
#include "featgan/io/pooling.hpp"
#include "featgan/nn/linear.hpp"

namespace featgan::classifier {

using nn::Index;

/// Feature rows with one class index per row.
struct LabeledSet {
  nn::MatrixF features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
};

LabeledSet labeled_from(const io::PooledSet& set);

std::vector<std::string> default_class_names();

struct HeadTrainConfig {
  int epochs = 30;
  double lr = 5e-3;
  int batch = 128;
  std::uint64_t seed = 0;
  double beta1 = 0.5;
  double beta2 = 0.999;

  void validate() const;
};

/// A single linear layer over pooled vectors; class order is part of the
/// model and is serialized with it.
struct LinearHead {
  nn::LinearLayer<float> layer;
  std::vector<std::string> classes;

  Index in_dim() const { return layer.in_dim(); }
  nn::MatrixF logits(const nn::MatrixF& x) const { return layer.apply(x); }
  std::vector<int> predict(const nn::MatrixF& x) const;
};

LinearHead make_head(Index in_dim, std::vector<std::string> classes, Rng& rng);

struct HeadEpoch {
  int epoch = 0;
  double train_loss = 0.0;
  double valid_accuracy = 0.0;
};

struct HeadTrainResult {
  LinearHead head;
  std::vector<HeadEpoch> history;
  int best_epoch = 0;  // 0: the initialization was kept
};

/// Softmax cross-entropy with Adam over shuffled mini-batches. If
/// `transform` is given, training inputs are first mapped through its
/// frozen generator. The epoch with the best validation accuracy is kept
/// (the earliest one on ties); without validation data the last epoch is.
HeadTrainResult train_head(const LabeledSet& train, const LabeledSet& valid, const HeadTrainConfig& cfg,
                           const std::vector<std::string>& classes = default_class_names(),
                           const cyclegan::Model* transform = nullptr);

struct Evaluation {
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

/// Argmax accuracy and confusion matrix. Test inputs are used as given
/// unless `transform` is set (ablation).
Evaluation evaluate(const LinearHead& head, const LabeledSet& test,
                    const cyclegan::Model* transform = nullptr);

/// Tab-separated confusion matrix with class names on both axes.
std::string confusion_table(const Evaluation& eval, const std::vector<std::string>& classes);

void save_head(const LinearHead& head, const std::filesystem::path& path, const std::string& config_json);
LinearHead load_head(const std::filesystem::path& path);

}  // namespace featgan::classifier

#endif  // FEATGAN_CLASSIFIER_HEAD_HPP
