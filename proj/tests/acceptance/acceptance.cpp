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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Everything runs on synthetic data and stub adapters.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "featgan/analysis/pca.hpp"
#include "featgan/analysis/probe.hpp"
#include "featgan/classifier/head.hpp"
#include "featgan/classifier/report.hpp"
#include "featgan/cyclegan/train.hpp"
#include "featgan/filtering/generation_loop.hpp"
#include "featgan/io/fseq.hpp"
#include "featgan/io/labels.hpp"
#include "featgan/io/pooling.hpp"
#include "featgan/nn/checkpoint.hpp"
#include "featgan/nn/gradcheck.hpp"
#include "support/test_support.hpp"

namespace featgan::acceptance {
namespace {

using nn::Index;
using nn::MatrixD;
using nn::MatrixF;
using testing::gaussian;
using testing::uniform;

/// Collects failed expectations of one criterion.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }

  std::string summary() const {
    std::ostringstream os;
    const auto& items = passed() ? notes_ : failures_;
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "; " : "") << items[i];
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Draws with a ReLU pre-activation or an L1 residual this close to its kink
// are redrawn: the central difference straddles the kink there.
constexpr double kKinkMargin = 0.02;
constexpr double kCompositeKinkMargin = 0.005;
constexpr double kGradTol = 1e-3;

// ------------------------------------------------------------------ 1

void randomize_biases(nn::Mlp<double>& net, Rng& rng) {
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto& b = net.layer(i).bias();
    for (Index j = 0; j < b.size(); ++j) b(j) = rng.uniform(-0.5, 0.5);
  }
}

template <typename LossFn>
double mlp_gradient_error(nn::Mlp<double>& net, const MatrixD& x, LossFn&& loss) {
  nn::Trace<double> tr;
  const MatrixD y = net.forward(x, tr);
  net.zero_grad();
  net.backward(tr, loss(y).grad);
  return nn::check_gradients(net.parameters("net"), [&] { return loss(net.apply(x)).value; }, 1e-3).max_rel_error;
}

void gradient_fidelity(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(1, "acceptance/gradients"));
  auto sweep = [&](const std::string& name, const std::function<std::optional<double>()>& instance) {
    int accepted = 0;
    double worst = 0.0;
    for (int attempt = 0; attempt < 1000 && accepted < 20; ++attempt) {
      if (auto err = instance()) {
        ++accepted;
        worst = std::max(worst, *err);
      }
    }
    v.expect(accepted == 20, name + ": only " + std::to_string(accepted) + " instances");
    v.expect(worst < kGradTol, name + " max rel error " + fmt("%.2e", worst));
    v.note(name + " " + fmt("%.1e", worst));
  };
  auto dims = [&] { return 1 + static_cast<Index>(rng.below(6)); };
  // The composite objectives pass through eight network applications, so
  // their shapes stay smaller for enough draws to clear the kink margin.
  auto tiny = [&] { return static_cast<Index>(rng.below(2)); };

  sweep("generator/L1", [&]() -> std::optional<double> {
    const Index d = dims();
    auto net = cyclegan::make_generator<double>(d, dims(), rng);
    randomize_biases(net, rng);
    const MatrixD x = uniform<double>(rng, dims(), d, -1.5, 1.5);
    const MatrixD t = uniform<double>(rng, x.rows(), d, -1, 1);
    nn::Trace<double> tr;
    const MatrixD y = net.forward(x, tr);
    if (tr.relu_margin(net.activations()) < kKinkMargin || (y - t).cwiseAbs().minCoeff() < kKinkMargin) {
      return std::nullopt;
    }
    return mlp_gradient_error(net, x, [&](const MatrixD& p) { return nn::l1_loss(p, t); });
  });
  sweep("discriminator/MSE", [&]() -> std::optional<double> {
    const Index d = dims();
    auto net = cyclegan::make_discriminator<double>(d, dims(), rng);
    randomize_biases(net, rng);
    const MatrixD x = uniform<double>(rng, dims(), d, -1.5, 1.5);
    const double label = static_cast<double>(rng.below(2));
    nn::Trace<double> tr;
    net.forward(x, tr);
    if (tr.relu_margin(net.activations()) < kKinkMargin) return std::nullopt;
    return mlp_gradient_error(net, x, [&](const MatrixD& p) { return nn::mse_loss(p, label); });
  });
  sweep("head/cross-entropy", [&]() -> std::optional<double> {
    nn::Mlp<double> net;
    nn::LinearLayer<double> lin(dims(), 2 + static_cast<Index>(rng.below(10)));
    lin.init_fan_in(rng);
    const Index classes = lin.out_dim();
    const MatrixD x = gaussian<double>(rng, dims(), lin.in_dim());
    net.add(std::move(lin), nn::Activation::kIdentity);
    std::vector<int> y(static_cast<std::size_t>(x.rows()));
    for (auto& l : y) l = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes)));
    return mlp_gradient_error(net, x, [&](const MatrixD& p) { return nn::cross_entropy_loss(p, std::span<const int>(y)); });
  });
  sweep("cyclegan generators", [&]() -> std::optional<double> {
    auto nets = cyclegan::Networks<double>::create(2 + tiny(), 2 + tiny(), rng);
    testing::randomize_biases(nets, rng);
    const MatrixD a = gaussian<double>(rng, 1 + tiny(), nets.dim());
    const MatrixD b = gaussian<double>(rng, 1 + tiny(), nets.dim());
    if (testing::cyclegan_kink_margin(nets, a, b) < kCompositeKinkMargin) return std::nullopt;
    const cyclegan::LossWeights w{rng.uniform(0.5, 10), rng.uniform(0.1, 1)};
    nets.zero_grad();
    cyclegan::composite_loss_backward(nets, a, b, w);
    return nn::check_gradients(nets.generator_parameters(),
                               [&] { return cyclegan::composite_loss(nets, a, b, w).total; })
        .max_rel_error;
  });
  sweep("cyclegan discriminators", [&]() -> std::optional<double> {
    auto nets = cyclegan::Networks<double>::create(2 + tiny(), 2 + tiny(), rng);
    testing::randomize_biases(nets, rng);
    const MatrixD a = gaussian<double>(rng, 1 + tiny(), nets.dim());
    const MatrixD b = gaussian<double>(rng, 1 + tiny(), nets.dim());
    if (testing::cyclegan_kink_margin(nets, a, b) < kCompositeKinkMargin) return std::nullopt;
    nets.zero_grad();
    cyclegan::discriminator_loss_backward(nets, a, b);
    return nn::check_gradients(nets.discriminator_parameters(), [&] {
             const auto t = cyclegan::discriminator_loss(nets, a, b);
             return t.d_a + t.d_b;
           })
        .max_rel_error;
  });
  const double secs = seconds_since(t0);
  v.expect(secs < 30.0, "runtime " + fmt("%.1f s", secs) + " exceeds 30 s");
}

// ------------------------------------------------------------------ 2

void composite_identity(Verdict& v) {
  Rng rng(derive_seed(2, "acceptance/composite"));
  double worst = 0.0;
  bool exact = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng.below(12));
    auto nets = cyclegan::Networks<double>::create(d, 1 + static_cast<Index>(rng.below(16)), rng);
    const MatrixD a = gaussian<double>(rng, 1 + static_cast<Index>(rng.below(32)), d, 2.0);
    const MatrixD b = gaussian<double>(rng, 1 + static_cast<Index>(rng.below(32)), d, 2.0);
    const cyclegan::LossWeights w{rng.uniform(0, 20), rng.uniform(0, 5)};
    const auto t = cyclegan::composite_loss(nets, a, b, w);
    const double sum =
        t.gan_a + t.gan_b + w.lambda_cyc * (t.cyc_a + t.cyc_b) + w.lambda_id * (t.id_a + t.id_b);
    worst = std::max(worst, std::abs(t.total - sum));
    const auto z = cyclegan::composite_loss(nets, a, b, {0.0, 0.0});
    exact = exact && z.total == z.gan_a + z.gan_b && z.gan_a == t.gan_a && z.gan_b == t.gan_b;

    nets.zero_grad();
    const auto tb = cyclegan::composite_loss_backward(nets, a, b, w);
    worst = std::max(worst, std::abs(tb.total - sum));
  }
  v.expect(worst <= 1e-6, "weighted-sum gap " + fmt("%.2e", worst));
  v.expect(exact, "zero weights do not reduce to the adversarial terms");
  v.note("max gap " + fmt("%.1e", worst) + " over 100 batches");
}

// ------------------------------------------------------------------ 3

// Fixed budget: 100 epochs, about half of the 5 minute limit on one core.
constexpr int kToyEpochs = 100;

void toy_adaptation(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto clouds = testing::two_clouds(42, 1536, 1000, 4.0);
  cyclegan::TrainConfig cfg;
  cfg.lr = 1e-4;
  cfg.epochs = kToyEpochs;
  cfg.seed = 7;

  auto identity_l1 = [&](const cyclegan::Model& m) {
    const MatrixF sb = m.scaler.scale(clouds.b);
    return static_cast<double>((m.nets.g_a.apply(sb) - sb).cwiseAbs().mean());
  };
  cyclegan::TrainConfig init_cfg = cfg;
  init_cfg.epochs = 0;
  const double id_before = identity_l1(cyclegan::train(clouds.a, clouds.b, init_cfg).model);

  const auto result = cyclegan::train(clouds.a, clouds.b, cfg);
  const MatrixF moved = result.model.transform(clouds.a);
  const double before = testing::mean_distance_to(clouds.a, clouds.centroid_b);
  const double after = testing::mean_distance_to(moved, clouds.centroid_b);
  const double id_after = identity_l1(result.model);
  const double centroid_gap = (moved.cast<double>().colwise().mean() - clouds.centroid_b).norm();
  const double secs = seconds_since(t0);

  v.expect(after <= 0.5 * before, "mean distance " + fmt("%.2f", after) + " > half of " + fmt("%.2f", before));
  v.expect(id_after < id_before, "identity L1 " + fmt("%.5f", id_after) + " not below initial " + fmt("%.5f", id_before));
  v.expect(secs < 300.0, "runtime " + fmt("%.0f s", secs));
  const std::string diag = "distance " + fmt("%.2f", after) + "/" + fmt("%.2f", before) + ", identity L1 " +
                           fmt("%.5f", id_after) + " vs " + fmt("%.5f", id_before) + ", centroid gap " +
                           fmt("%.2f", centroid_gap) + ", final d_a " + fmt("%.3f", result.history.back().disc.d_a);
  v.note(diag);
  if (!v.passed()) v.expect(false, diag);
}

// ------------------------------------------------------------------ 4

void filtering(Verdict& v) {
  using namespace filtering;
  const auto rows = testing::filter_golden_rows();
  v.expect(rows.size() == 12, "golden table has " + std::to_string(rows.size()) + " rows");
  for (const auto& r : rows) {
    const bool keep = agreement_filter(r.target, {r.asr_1, r.asr_2}) == FilterDecision::kKeep;
    v.expect(keep == r.keep, "row '" + r.target + "' | '" + r.asr_1 + "' | '" + r.asr_2 + "'");
  }

  testing::TempDir dir;
  const int jobs = 2000;
  const int attempts = 3;
  std::vector<Donor> donors;
  for (int i = 0; i < jobs * attempts; ++i) donors.push_back({"d" + std::to_string(i), "s", "d.wav"});
  VoicePool pool(donors);
  Rng coin(derive_seed(4, "acceptance/coin"));
  SpeechBackends stub;
  stub.synthesize = [](const std::string&, const Donor&, const std::filesystem::path&) {};
  stub.asr_1 = [](const std::filesystem::path&) { return std::string("yes"); };
  stub.asr_2 = [&](const std::filesystem::path&) { return std::string(coin.below(2) ? "yes" : "yeah"); };
  LoopConfig cfg;
  cfg.targets = {{"yes", jobs}};
  cfg.max_attempts = attempts;
  cfg.out_dir = dir.path();
  cfg.seed = 4;
  const auto report = run_generation_loop(cfg, pool, stub);
  const auto& s = report.per_word.at("yes");
  const double rate = static_cast<double>(s.exhausted) / jobs;
  const double p = std::pow(0.5, attempts);
  const double sigma = std::sqrt(p * (1 - p) / jobs);
  v.expect(std::abs(rate - p) <= 3 * sigma,
           "exhaustion rate " + fmt("%.4f", rate) + " vs " + fmt("%.4f", p) + " +- " + fmt("%.4f", 3 * sigma));
  v.expect(s.kept + s.exhausted == jobs && s.failed == 0, "job accounting");
  v.note("12 rows; exhaustion " + fmt("%.4f", rate) + " vs " + fmt("%.4f", p));
}

// ------------------------------------------------------------------ 5

void pooling_pca(Verdict& v) {
  const auto j = testing::load_json("pooling_pca.json");
  double pool_err = 0.0;
  for (const char* key : {"pool_small", "pool_offset"}) {
    const MatrixF x = testing::matrix_from_json<float>(j[key]["x"]);
    const auto expected = j[key]["expected"].get<std::vector<double>>();
    const auto p = io::stat_pool(x);
    for (Index i = 0; i < p.size(); ++i) {
      const double e = expected[static_cast<std::size_t>(i)];
      pool_err = std::max(pool_err, std::abs(p(i) - e) / std::max(1.0, std::abs(e)));
    }
  }
  v.expect(pool_err <= 1e-6, "stat_pool error " + fmt("%.2e", pool_err));

  const auto& o = j["pca"];
  const MatrixD x = testing::matrix_from_json(o["x"]);
  const MatrixD comps = testing::matrix_from_json(o["components"]);
  const auto m = analysis::pca_fit(x, 6);
  double axis_err = 0.0, eig_err = 0.0;
  for (Index c = 0; c < 6; ++c) {
    axis_err = std::max(axis_err, std::min((m.components.row(c) - comps.row(c)).cwiseAbs().maxCoeff(),
                                           (m.components.row(c) + comps.row(c)).cwiseAbs().maxCoeff()));
    eig_err = std::max(eig_err, std::abs(m.eigenvalues[static_cast<std::size_t>(c)] -
                                         o["eigenvalues"][static_cast<std::size_t>(c)].get<double>()));
  }
  v.expect(axis_err <= 1e-4, "component error " + fmt("%.2e", axis_err));
  v.expect(eig_err <= 1e-4, "eigenvalue error " + fmt("%.2e", eig_err));

  // Invariants: orthonormal axes, ratios in [0,1] summing to at most one
  // (exactly one at full rank), projected variance equal to the eigenvalue.
  double ratio_sum = 0.0, var_err = 0.0;
  const MatrixD z = analysis::pca_project(m, x);
  for (Index c = 0; c < 6; ++c) {
    const double r = m.explained_ratio[static_cast<std::size_t>(c)];
    v.expect(r >= 0.0 && r <= 1.0, "ratio out of range");
    ratio_sum += r;
    const double var = (z.col(c).array() - z.col(c).mean()).square().sum() / static_cast<double>(x.rows() - 1);
    var_err = std::max(var_err, std::abs(var - m.eigenvalues[static_cast<std::size_t>(c)]));
  }
  const auto m2 = analysis::pca_fit(x, 2);
  v.expect(m2.explained_ratio[0] + m2.explained_ratio[1] <= 1.0 + 1e-12, "k=2 ratios exceed one");
  v.expect(std::abs(ratio_sum - 1.0) <= 1e-9, "full-rank ratios sum to " + fmt("%.12f", ratio_sum));
  v.expect(var_err <= 1e-9 * m.total_variance, "projected variance gap " + fmt("%.2e", var_err));
  v.expect((m.components * m.components.transpose() - MatrixD::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-9,
           "components not orthonormal");
  v.note("pool " + fmt("%.1e", pool_err) + ", axes " + fmt("%.1e", axis_err) + ", eigenvalues " + fmt("%.1e", eig_err));
}

// ------------------------------------------------------------------ 6

void classifier_sanity(Verdict& v) {
  auto separable = [](std::uint64_t seed, Index per_class) {
    Rng rng(seed);
    auto [x, y] = testing::separable_classes(rng, io::kNumClasses, 32, per_class, 6.0, 0.5);
    return classifier::LabeledSet{std::move(x), std::move(y)};
  };
  classifier::HeadTrainConfig cfg;  // 30 epochs, lr 5e-3
  cfg.seed = 6;
  const auto trained = classifier::train_head(separable(61, 200), separable(62, 20), cfg);
  const auto held_out = classifier::evaluate(trained.head, separable(63, 30));
  v.expect(held_out.accuracy == 1.0, "separable held-out accuracy " + fmt("%.4f", held_out.accuracy));
  v.expect(cfg.epochs <= 30 && cfg.lr == 5e-3, "recipe");

  Rng rng(derive_seed(6, "acceptance/random-head"));
  const Index n = 5500;
  classifier::LabeledSet noise{gaussian<float>(rng, n, 32), {}};
  for (Index i = 0; i < n; ++i) noise.labels.push_back(static_cast<int>(rng.below(io::kNumClasses)));
  const auto head = classifier::make_head(32, classifier::default_class_names(), rng);
  const double acc = classifier::evaluate(head, noise).accuracy;
  const double p = 1.0 / io::kNumClasses;
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
  v.expect(std::abs(acc - p) <= 3 * sigma, "random head accuracy " + fmt("%.4f", acc));

  const std::vector<double> runs{0.9, 1.0};
  const auto s = classifier::multi_seed_report(runs);
  v.expect(std::abs(s.mean - 0.95) < 1e-12 && std::abs(s.std - std::sqrt(0.005)) < 1e-12,
           "multi_seed_report " + fmt("%.6f", s.mean) + " +- " + fmt("%.6f", s.std));
  v.note("held-out " + fmt("%.3f", held_out.accuracy) + ", random head " + fmt("%.4f", acc) + ", report " +
         classifier::format_summary(s));
}

// ------------------------------------------------------------------ 7

void probe(Verdict& v) {
  analysis::ProbeConfig cfg;
  cfg.seed = 7;
  Rng rng(derive_seed(7, "acceptance/probe"));
  const MatrixF real = gaussian<float>(rng, 4000, 16);
  const MatrixF same = gaussian<float>(rng, 4000, 16);
  const double null_acc = analysis::separability_probe(real, same, cfg).balanced_accuracy;
  v.expect(std::abs(null_acc - 0.5) <= 0.05, "null balanced accuracy " + fmt("%.4f", null_acc));

  // 10 standard deviations between the centroids.
  const auto clouds = testing::two_clouds(derive_seed(7, "acceptance/clouds"), 16, 1000, 10.0);
  const double alt_acc = analysis::separability_probe(clouds.b, clouds.a, cfg).balanced_accuracy;
  v.expect(alt_acc >= 0.99, "separated balanced accuracy " + fmt("%.4f", alt_acc));
  v.note("null " + fmt("%.4f", null_acc) + ", separated " + fmt("%.4f", alt_acc));
}

// ------------------------------------------------------------------ 8

template <typename Decode>
io::FormatErrorKind kind_of(Decode&& decode) {
  try {
    decode();
  } catch (const io::FormatError& e) {
    return e.kind();
  }
  return io::FormatErrorKind::kIo;  // decoding wrongly succeeded
}

bool bit_equal(const MatrixF& a, const MatrixF& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(float) * static_cast<std::size_t>(a.size())) == 0;
}

void format_stability(Verdict& v) {
  using io::FormatErrorKind;
  testing::TempDir dir;
  Rng rng(derive_seed(8, "acceptance/formats"));
  for (int trial = 0; trial < 20; ++trial) {
    MatrixF m = gaussian<float>(rng, 1 + static_cast<Index>(rng.below(50)), 1 + static_cast<Index>(rng.below(80)), 1e3);
    m(0, 0) = -0.0f;
    m(m.rows() - 1, m.cols() - 1) = std::numeric_limits<float>::denorm_min();
    io::write_fseq(m, dir / "x.fseq");
    v.expect(bit_equal(io::read_fseq(dir / "x.fseq").values, m), "FSEQ round-trip");
  }
  const auto fseq = io::encode_fseq(MatrixF::Ones(2, 3));
  auto bad = fseq;
  bad[0] = 'X';
  v.expect(kind_of([&] { io::decode_fseq(bad); }) == FormatErrorKind::kBadMagic, "FSEQ magic");
  bad = fseq;
  bad[4] = 7;
  v.expect(kind_of([&] { io::decode_fseq(bad); }) == FormatErrorKind::kUnsupportedVersion, "FSEQ version");
  v.expect(kind_of([&] { io::decode_fseq(std::span(fseq).first(10)); }) == FormatErrorKind::kTruncated,
           "FSEQ truncated header");
  v.expect(kind_of([&] { io::decode_fseq(std::span(fseq).first(fseq.size() - 1)); }) == FormatErrorKind::kTruncated,
           "FSEQ truncated payload");

  for (int trial = 0; trial < 5; ++trial) {
    const auto clouds = testing::two_clouds(static_cast<std::uint64_t>(trial), 6, 40, 2.0);
    cyclegan::TrainConfig cfg;
    cfg.epochs = 1;
    cfg.hidden = 8;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const auto model = cyclegan::train(clouds.a, clouds.b, cfg).model;
    cyclegan::save_model(model, dir / "g.fgnn");
    const auto bytes = nn::encode_checkpoint(nn::read_checkpoint(dir / "g.fgnn"));
    const std::string file = testing::read_text(dir / "g.fgnn");
    v.expect(std::string(bytes.begin(), bytes.end()) == file, "checkpoint re-encode");
    v.expect(bit_equal(cyclegan::load_model(dir / "g.fgnn").transform(clouds.a), model.transform(clouds.a)),
             "checkpoint model round-trip");
  }
  const std::string file = testing::read_text(dir / "g.fgnn");
  std::vector<std::uint8_t> ck(file.begin(), file.end());
  auto corrupt = ck;
  corrupt[1] = 'X';
  v.expect(kind_of([&] { nn::decode_checkpoint(corrupt); }) == FormatErrorKind::kBadMagic, "checkpoint magic");
  corrupt = ck;
  corrupt[4] = 9;
  v.expect(kind_of([&] { nn::decode_checkpoint(corrupt); }) == FormatErrorKind::kUnsupportedVersion,
           "checkpoint version");
  v.expect(kind_of([&] { nn::decode_checkpoint(std::span(ck).first(30)); }) == FormatErrorKind::kTruncated,
           "checkpoint truncated");
  v.note("20 FSEQ and 5 checkpoint round-trips, 7 corrupt headers");
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Verdict&);
};

}  // namespace
}  // namespace featgan::acceptance

int main() {
  using namespace featgan::acceptance;
  const Criterion criteria[] = {
      {1, "gradient fidelity", gradient_fidelity},   {2, "composite-loss identity", composite_identity},
      {3, "toy domain adaptation", toy_adaptation},  {4, "filtering decision table", filtering},
      {5, "pooling and PCA oracles", pooling_pca},   {6, "classifier sanity", classifier_sanity},
      {7, "separability probe", probe},              {8, "format stability", format_stability},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    failed += v.passed() ? 0 : 1;
    std::printf("%s %d %s (%.1f s): %s\n", v.passed() ? "PASS" : "FAIL", c.id, c.name, secs, v.summary().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
