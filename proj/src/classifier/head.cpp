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

#include "featgan/classifier/head.hpp"

#include <numeric>
#include <sstream>

#include "featgan/nn/adam.hpp"
#include "featgan/nn/checkpoint.hpp"
#include "featgan/nn/loss.hpp"
#include "json.hpp"

namespace featgan::classifier {

LabeledSet labeled_from(const io::PooledSet& set) {
  LabeledSet out;
  out.features = set.values;
  out.labels.reserve(set.records.size());
  for (const auto& r : set.records) {
    out.labels.push_back(r.label);
  }
  return out;
}

std::vector<std::string> default_class_names() {
  return {io::kClassNames.begin(), io::kClassNames.end()};
}

void HeadTrainConfig::validate() const {
  if (epochs < 0) throw std::invalid_argument("train_head: epochs must be >= 0");
  if (!(lr > 0.0)) throw std::invalid_argument("train_head: lr must be positive");
  if (batch < 1) throw std::invalid_argument("train_head: batch must be >= 1");
}

std::vector<int> LinearHead::predict(const nn::MatrixF& x) const {
  const nn::MatrixF z = logits(x);
  std::vector<int> out(static_cast<std::size_t>(z.rows()));
  for (Index i = 0; i < z.rows(); ++i) {
    Index arg = 0;
    z.row(i).maxCoeff(&arg);
    out[static_cast<std::size_t>(i)] = static_cast<int>(arg);
  }
  return out;
}

LinearHead make_head(Index in_dim, std::vector<std::string> classes, Rng& rng) {
  LinearHead h;
  h.layer = nn::LinearLayer<float>(in_dim, static_cast<Index>(classes.size()));
  h.layer.init_fan_in(rng);
  h.classes = std::move(classes);
  return h;
}

namespace {

void check_labels(const LabeledSet& set, std::size_t classes, const char* which) {
  if (static_cast<Index>(set.labels.size()) != set.features.rows()) {
    throw nn::DimensionError(std::string(which) + ": label count does not match row count");
  }
  for (int y : set.labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= classes) {
      throw std::out_of_range(std::string(which) + ": label index " + std::to_string(y) + " out of range");
    }
  }
}

}  // namespace

HeadTrainResult train_head(const LabeledSet& train, const LabeledSet& valid, const HeadTrainConfig& cfg,
                           const std::vector<std::string>& classes, const cyclegan::Model* transform) {
  cfg.validate();
  if (train.size() == 0) {
    throw std::invalid_argument("train_head: empty training set");
  }
  check_labels(train, classes.size(), "train_head");
  check_labels(valid, classes.size(), "train_head (valid)");
  if (valid.size() > 0 && valid.features.cols() != train.features.cols()) {
    throw nn::DimensionError("train_head: train and valid dims differ");
  }
  nn::MatrixF inputs = train.features;
  if (transform) {
    if (transform->nets.dim() != inputs.cols()) {
      throw nn::DimensionError("train_head: transform expects dim " + std::to_string(transform->nets.dim()) +
                               ", features have " + std::to_string(inputs.cols()));
    }
    inputs = transform->transform(inputs);
  }

  Rng init_rng(derive_seed(cfg.seed, "head/init"));
  Rng order_rng(derive_seed(cfg.seed, "head/order"));
  HeadTrainResult result;
  result.head = make_head(inputs.cols(), classes, init_rng);
  LinearHead best = result.head;
  double best_acc = -1.0;

  nn::Adam<float> opt({cfg.lr, cfg.beta1, cfg.beta2, 1e-8});
  std::vector<nn::ParamRef<float>> params;
  result.head.layer.append_parameters("head", params);

  std::vector<Index> order(train.size());
  std::iota(order.begin(), order.end(), Index{0});
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    order_rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch)) {
      const std::size_t n = std::min(order.size() - start, static_cast<std::size_t>(cfg.batch));
      nn::MatrixF x(static_cast<Index>(n), inputs.cols());
      std::vector<int> y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x.row(static_cast<Index>(i)) = inputs.row(order[start + i]);
        y[i] = train.labels[static_cast<std::size_t>(order[start + i])];
      }
      result.head.layer.zero_grad();
      const auto loss = nn::cross_entropy_loss<float>(result.head.layer.forward(x), y);
      result.head.layer.backward(loss.grad);
      opt.step(params);
      loss_sum += loss.value * static_cast<double>(n);
      seen += n;
    }
    HeadEpoch rec{epoch, loss_sum / static_cast<double>(seen), 0.0};
    if (valid.size() > 0) {
      rec.valid_accuracy = evaluate(result.head, valid).accuracy;
      if (rec.valid_accuracy > best_acc) {
        best_acc = rec.valid_accuracy;
        best = result.head;
        result.best_epoch = epoch;
      }
    } else {
      best = result.head;
      result.best_epoch = epoch;
    }
    result.history.push_back(rec);
  }
  result.head = std::move(best);
  result.head.layer.zero_grad();
  return result;
}

Evaluation evaluate(const LinearHead& head, const LabeledSet& test, const cyclegan::Model* transform) {
  if (test.size() == 0) {
    throw std::invalid_argument("evaluate: empty test set");
  }
  check_labels(test, head.classes.size(), "evaluate");
  if (test.features.cols() != head.in_dim()) {
    throw nn::DimensionError("evaluate: head expects dim " + std::to_string(head.in_dim()) + ", got " +
                             std::to_string(test.features.cols()));
  }
  const auto pred = transform ? head.predict(transform->transform(test.features)) : head.predict(test.features);
  Evaluation e;
  const std::size_t k = head.classes.size();
  e.confusion.assign(k, std::vector<std::size_t>(k, 0));
  e.total = test.size();
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto t = static_cast<std::size_t>(test.labels[i]);
    const auto p = static_cast<std::size_t>(pred[i]);
    ++e.confusion[t][p];
    if (t == p) ++e.correct;
  }
  e.accuracy = static_cast<double>(e.correct) / static_cast<double>(e.total);
  return e;
}

std::string confusion_table(const Evaluation& eval, const std::vector<std::string>& classes) {
  std::ostringstream os;
  os << "true\\predicted";
  for (const auto& c : classes) os << '\t' << c;
  os << '\n';
  for (std::size_t i = 0; i < eval.confusion.size(); ++i) {
    os << classes[i];
    for (auto v : eval.confusion[i]) os << '\t' << v;
    os << '\n';
  }
  return os.str();
}

void save_head(const LinearHead& head, const std::filesystem::path& path, const std::string& config_json) {
  nn::Checkpoint ckpt;
  nn::Mlp<float> net;
  net.add(head.layer, nn::Activation::kIdentity);
  nn::append_layers(net, ckpt.layers);
  nlohmann::ordered_json meta;
  meta["kind"] = "linear_head";
  meta["toolkit_version"] = FEATGAN_VERSION;
  meta["classes"] = head.classes;
  meta["train_config"] = config_json.empty() ? nlohmann::ordered_json::object()
                                             : nlohmann::ordered_json::parse(config_json);
  ckpt.metadata = meta.dump();
  nn::write_checkpoint(ckpt, path);
}

LinearHead load_head(const std::filesystem::path& path) {
  using io::FormatError;
  using io::FormatErrorKind;
  const auto ckpt = nn::read_checkpoint(path);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(ckpt.metadata);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": metadata: " + e.what());
  }
  if (meta.value("kind", "") != "linear_head") {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": not a linear head checkpoint");
  }
  std::size_t pos = 0;
  auto net = nn::mlp_from_layers(ckpt.layers, pos, 1);
  LinearHead h;
  h.layer = net.layer(0);
  h.classes = meta.at("classes").get<std::vector<std::string>>();
  if (static_cast<Index>(h.classes.size()) != h.layer.out_dim() || pos != ckpt.layers.size()) {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": class table does not match the layer");
  }
  return h;
}

}  // namespace featgan::classifier
