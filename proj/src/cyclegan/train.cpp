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

#include "featgan/cyclegan/train.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include "featgan/nn/checkpoint.hpp"
#include "json.hpp"

namespace featgan::cyclegan {

void TrainConfig::validate() const {
  if (epochs < 0) throw std::invalid_argument("cyclegan: epochs must be >= 0");
  if (batch < 1) throw std::invalid_argument("cyclegan: batch must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("cyclegan: lr must be positive");
  if (lambda_cyc < 0.0 || lambda_id < 0.0) throw std::invalid_argument("cyclegan: lambdas must be >= 0");
  if (hidden < 1) throw std::invalid_argument("cyclegan: hidden must be >= 1");
}

nn::MatrixF Model::transform(const nn::MatrixF& raw) const {
  if (scaler.empty()) {
    throw std::logic_error("cyclegan transform: model has no fitted scaler");
  }
  return scaler.unscale(nets.g_a.apply(scaler.scale(raw)));
}

int steps_per_epoch(Index pool_a, Index pool_b, int batch) {
  const Index n = std::max(pool_a, pool_b);
  return static_cast<int>((n + batch - 1) / batch);
}

namespace {

/// Walks a reshuffled permutation of the pool; reshuffles when it runs out.
class BatchSampler {
 public:
  BatchSampler(Index size, std::uint64_t seed) : order_(static_cast<std::size_t>(size)), rng_(seed) {
    std::iota(order_.begin(), order_.end(), Index{0});
    rng_.shuffle(order_);
  }

  nn::MatrixF next(const nn::MatrixF& pool, int batch) {
    const Index n = std::min<Index>(batch, pool.rows());
    nn::MatrixF out(n, pool.cols());
    for (Index i = 0; i < n; ++i) {
      if (cursor_ == order_.size()) {
        rng_.shuffle(order_);
        cursor_ = 0;
      }
      out.row(i) = pool.row(order_[cursor_++]);
    }
    return out;
  }

 private:
  std::vector<Index> order_;
  std::size_t cursor_ = 0;
  Rng rng_;
};

void accumulate(EpochRecord& rec, const DiscriminatorTerms& d, const LossTerms& g) {
  rec.disc.d_a += d.d_a;
  rec.disc.d_b += d.d_b;
  rec.gen.gan_a += g.gan_a;
  rec.gen.gan_b += g.gan_b;
  rec.gen.cyc_a += g.cyc_a;
  rec.gen.cyc_b += g.cyc_b;
  rec.gen.id_a += g.id_a;
  rec.gen.id_b += g.id_b;
  rec.gen.total += g.total;
}

void finish(EpochRecord& rec) {
  const double n = rec.steps > 0 ? rec.steps : 1;
  rec.disc.d_a /= n;
  rec.disc.d_b /= n;
  for (double* v : {&rec.gen.gan_a, &rec.gen.gan_b, &rec.gen.cyc_a, &rec.gen.cyc_b, &rec.gen.id_a,
                    &rec.gen.id_b, &rec.gen.total}) {
    *v /= n;
  }
}

}  // namespace

TrainResult train(const nn::MatrixF& pool_a, const nn::MatrixF& pool_b, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  if (pool_a.rows() == 0 || pool_b.rows() == 0) {
    throw std::invalid_argument("cyclegan train: both pools must be non-empty");
  }
  if (pool_a.cols() != pool_b.cols()) {
    throw nn::DimensionError("cyclegan train: pools have dims " + std::to_string(pool_a.cols()) +
                             " and " + std::to_string(pool_b.cols()));
  }
  nn::MatrixF both(pool_a.rows() + pool_b.rows(), pool_a.cols());
  both << pool_a, pool_b;
  Model init;
  init.scaler = io::FeatureScaler::fit(both, cfg.scaler_margin);
  Rng rng(derive_seed(cfg.seed, "cyclegan/init"));
  init.nets = Networks<float>::create(pool_a.cols(), cfg.hidden, rng);
  return train(std::move(init), pool_a, pool_b, cfg, on_epoch);
}

TrainResult train(Model model, const nn::MatrixF& pool_a, const nn::MatrixF& pool_b,
                  const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  model.nets.check_dims();
  if (pool_a.rows() == 0 || pool_b.rows() == 0) {
    throw std::invalid_argument("cyclegan train: both pools must be non-empty");
  }
  if (pool_a.cols() != model.nets.dim() || pool_b.cols() != model.nets.dim()) {
    throw nn::DimensionError("cyclegan train: pool dims do not match the networks");
  }
  model.config = cfg;
  const nn::MatrixF a = model.scaler.scale(pool_a);
  const nn::MatrixF b = model.scaler.scale(pool_b);

  const nn::AdamOptions opts{cfg.lr, cfg.beta1, cfg.beta2, 1e-8};
  nn::Adam<float> opt_g(opts), opt_d(opts);
  auto g_params = model.nets.generator_parameters();
  auto d_params = model.nets.discriminator_parameters();
  BatchSampler sample_a(a.rows(), derive_seed(cfg.seed, "cyclegan/batches/a"));
  BatchSampler sample_b(b.rows(), derive_seed(cfg.seed, "cyclegan/batches/b"));
  const int steps = steps_per_epoch(a.rows(), b.rows(), cfg.batch);
  const LossWeights weights = cfg.weights();

  TrainResult result;
  Model last_good = model;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    EpochRecord rec;
    rec.epoch = epoch;
    try {
      for (int s = 0; s < steps; ++s) {
        const nn::MatrixF batch_a = sample_a.next(a, cfg.batch);
        const nn::MatrixF batch_b = sample_b.next(b, cfg.batch);

        model.nets.zero_grad();
        const auto d = discriminator_loss_backward(model.nets, batch_a, batch_b);
        opt_d.step(d_params);

        model.nets.zero_grad();
        const auto g = composite_loss_backward(model.nets, batch_a, batch_b, weights);
        opt_g.step(g_params);

        ++rec.steps;
        accumulate(rec, d, g);
      }
    } catch (const nn::NonFiniteError& e) {
      throw TrainingAborted("cyclegan training aborted in epoch " + std::to_string(epoch) + ": " + e.what(),
                            std::move(last_good), std::move(result.history));
    }
    finish(rec);
    result.history.push_back(rec);
    last_good = model;
    if (on_epoch) {
      on_epoch(rec, model);
    }
  }
  model.nets.zero_grad();
  result.model = std::move(model);
  return result;
}

namespace {

constexpr std::size_t kStagesPerNetwork = 3;

nlohmann::ordered_json config_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"batch", c.batch},
          {"lr", c.lr},
          {"lambda_cyc", c.lambda_cyc},
          {"lambda_id", c.lambda_id},
          {"seed", c.seed},
          {"hidden", c.hidden},
          {"scaler_margin", c.scaler_margin},
          {"beta1", c.beta1},
          {"beta2", c.beta2}};
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
  nn::Checkpoint ckpt;
  for (const auto* net : {&model.nets.g_a, &model.nets.g_b, &model.nets.d_a, &model.nets.d_b}) {
    if (net->size() != kStagesPerNetwork) {
      throw std::invalid_argument("save_model: only three-stage networks are serializable");
    }
    nn::append_layers(*net, ckpt.layers);
  }
  nn::CheckpointLayer scaler;
  scaler.kind = nn::LayerKind::kMinMaxScaler;
  scaler.rows = 2;
  scaler.cols = static_cast<std::uint32_t>(model.scaler.dims());
  for (const auto* v : {&model.scaler.min(), &model.scaler.max()}) {
    for (Index i = 0; i < v->size(); ++i) {
      scaler.payload.push_back(static_cast<float>((*v)(i)));
    }
  }
  ckpt.layers.push_back(std::move(scaler));
  nlohmann::ordered_json meta;
  meta["kind"] = "cyclegan";
  meta["toolkit_version"] = FEATGAN_VERSION;
  meta["networks"] = {"g_a", "g_b", "d_a", "d_b"};
  meta["stages_per_network"] = kStagesPerNetwork;
  meta["train_config"] = config_json(model.config);
  ckpt.metadata = meta.dump();
  nn::write_checkpoint(ckpt, path);
}

Model load_model(const std::filesystem::path& path) {
  using io::FormatError;
  using io::FormatErrorKind;
  const auto ckpt = nn::read_checkpoint(path);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(ckpt.metadata);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": metadata: " + e.what());
  }
  if (meta.value("kind", "") != "cyclegan") {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": not a cyclegan checkpoint");
  }
  Model m;
  std::size_t pos = 0;
  m.nets.g_a = nn::mlp_from_layers(ckpt.layers, pos, kStagesPerNetwork);
  m.nets.g_b = nn::mlp_from_layers(ckpt.layers, pos, kStagesPerNetwork);
  m.nets.d_a = nn::mlp_from_layers(ckpt.layers, pos, kStagesPerNetwork);
  m.nets.d_b = nn::mlp_from_layers(ckpt.layers, pos, kStagesPerNetwork);
  try {
    m.nets.check_dims();
  } catch (const nn::DimensionError& e) {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": " + e.what());
  }
  if (pos + 1 != ckpt.layers.size() || ckpt.layers[pos].kind != nn::LayerKind::kMinMaxScaler ||
      ckpt.layers[pos].rows != 2 || ckpt.layers[pos].cols != m.nets.dim()) {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": missing or mismatched scaler");
  }
  const auto& s = ckpt.layers[pos];
  const Index d = s.cols;
  nn::RowVectorD lo(d), hi(d);
  for (Index i = 0; i < d; ++i) {
    lo(i) = s.payload[static_cast<std::size_t>(i)];
    hi(i) = s.payload[static_cast<std::size_t>(d + i)];
  }
  try {
    const auto& c = meta.at("train_config");
    m.config.epochs = c.at("epochs").get<int>();
    m.config.batch = c.at("batch").get<int>();
    m.config.lr = c.at("lr").get<double>();
    m.config.lambda_cyc = c.at("lambda_cyc").get<double>();
    m.config.lambda_id = c.at("lambda_id").get<double>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.hidden = c.at("hidden").get<Index>();
    m.config.scaler_margin = c.at("scaler_margin").get<double>();
    m.config.beta1 = c.at("beta1").get<double>();
    m.config.beta2 = c.at("beta2").get<double>();
    m.scaler = io::FeatureScaler(lo, hi, m.config.scaler_margin);
  } catch (const std::exception& e) {
    throw FormatError(FormatErrorKind::kMalformed, path.string() + ": train_config: " + e.what());
  }
  return m;
}

std::string history_table(const std::vector<EpochRecord>& history) {
  std::ostringstream os;
  os << "epoch\tsteps\td_a\td_b\tgan_a\tgan_b\tcyc_a\tcyc_b\tid_a\tid_b\ttotal\n";
  char buf[256];
  for (const auto& r : history) {
    std::snprintf(buf, sizeof buf, "%d\t%d\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\n", r.epoch,
                  r.steps, r.disc.d_a, r.disc.d_b, r.gen.gan_a, r.gen.gan_b, r.gen.cyc_a, r.gen.cyc_b,
                  r.gen.id_a, r.gen.id_b, r.gen.total);
    os << buf;
  }
  return os.str();
}

}  // namespace featgan::cyclegan
