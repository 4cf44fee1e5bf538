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

#ifndef FEATGAN_CYCLEGAN_CYCLEGAN_HPP
#define FEATGAN_CYCLEGAN_CYCLEGAN_HPP

#include <cmath>
#include <string>
#include <vector>

#include "featgan/nn/loss.hpp"
#include "featgan/nn/mlp.hpp"

namespace featgan::cyclegan {

using nn::Index;
using nn::Matrix;

/// dim -> hidden -> hidden -> dim with ReLU, ReLU, tanh.
template <typename Scalar>
nn::Mlp<Scalar> make_generator(Index dim, Index hidden, Rng& rng) {
  return nn::make_mlp<Scalar>({dim, hidden, hidden, dim}, nn::Activation::kTanh, rng);
}

/// dim -> hidden -> hidden -> 1 with ReLU, ReLU, sigmoid.
template <typename Scalar>
nn::Mlp<Scalar> make_discriminator(Index dim, Index hidden, Rng& rng) {
  return nn::make_mlp<Scalar>({dim, hidden, hidden, 1}, nn::Activation::kSigmoid, rng);
}

/// Domain A is synthetic, domain B is real. g_a maps A -> B and g_b maps
/// B -> A; d_a scores real-domain vectors (true B vs g_a output) and d_b
/// scores synthetic-domain vectors (true A vs g_b output).
template <typename Scalar>
struct Networks {
  nn::Mlp<Scalar> g_a, g_b, d_a, d_b;

  static Networks create(Index dim, Index hidden, Rng& rng) {
    Networks n;
    n.g_a = make_generator<Scalar>(dim, hidden, rng);
    n.g_b = make_generator<Scalar>(dim, hidden, rng);
    n.d_a = make_discriminator<Scalar>(dim, hidden, rng);
    n.d_b = make_discriminator<Scalar>(dim, hidden, rng);
    return n;
  }

  Index dim() const { return g_a.in_dim(); }

  /// Throws nn::DimensionError unless all four networks agree on dim.
  void check_dims() const {
    const Index d = g_a.in_dim();
    if (g_a.out_dim() != d || g_b.in_dim() != d || g_b.out_dim() != d || d_a.in_dim() != d ||
        d_b.in_dim() != d || d_a.out_dim() != 1 || d_b.out_dim() != 1) {
      throw nn::DimensionError("cyclegan: networks disagree on feature dimension " + std::to_string(d));
    }
  }

  void zero_grad() {
    g_a.zero_grad();
    g_b.zero_grad();
    d_a.zero_grad();
    d_b.zero_grad();
  }

  std::vector<nn::ParamRef<Scalar>> generator_parameters() {
    auto p = g_a.parameters("g_a");
    auto q = g_b.parameters("g_b");
    p.insert(p.end(), q.begin(), q.end());
    return p;
  }

  std::vector<nn::ParamRef<Scalar>> discriminator_parameters() {
    auto p = d_a.parameters("d_a");
    auto q = d_b.parameters("d_b");
    p.insert(p.end(), q.begin(), q.end());
    return p;
  }

  template <typename Other>
  Networks<Other> cast() const {
    return {g_a.template cast<Other>(), g_b.template cast<Other>(), d_a.template cast<Other>(),
            d_b.template cast<Other>()};
  }
};

struct LossWeights {
  double lambda_cyc = 10.0;
  double lambda_id = 0.5;
};

/// The six terms of the generator objective and their weighted total.
struct LossTerms {
  double gan_a = 0.0;  // MSE(d_a(g_a(a)), 1)
  double gan_b = 0.0;  // MSE(d_b(g_b(b)), 1)
  double cyc_a = 0.0;  // L1(g_b(g_a(a)), a)
  double cyc_b = 0.0;  // L1(g_a(g_b(b)), b)
  double id_a = 0.0;   // L1(g_b(a), a)
  double id_b = 0.0;   // L1(g_a(b), b)
  double total = 0.0;

  double weighted_sum(const LossWeights& w) const {
    return gan_a + gan_b + w.lambda_cyc * (cyc_a + cyc_b) + w.lambda_id * (id_a + id_b);
  }

  /// Throws nn::NonFiniteError naming the first non-finite term.
  void check_finite() const {
    const std::pair<const char*, double> terms[] = {{"gan_a", gan_a}, {"gan_b", gan_b},
                                                    {"cyc_a", cyc_a}, {"cyc_b", cyc_b},
                                                    {"id_a", id_a},   {"id_b", id_b},
                                                    {"total", total}};
    for (const auto& [name, v] : terms) {
      if (!std::isfinite(v)) {
        throw nn::NonFiniteError(std::string("cyclegan loss term ") + name + " is non-finite");
      }
    }
  }
};

struct DiscriminatorTerms {
  double d_a = 0.0;  // 0.5 [MSE(d_a(b), 1) + MSE(d_a(g_a(a)), 0)]
  double d_b = 0.0;  // 0.5 [MSE(d_b(a), 1) + MSE(d_b(g_b(b)), 0)]
};

namespace detail {

template <typename Scalar>
void check_batches(const Networks<Scalar>& nets, const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() == 0 || b.rows() == 0) {
    throw nn::DimensionError("cyclegan: empty batch");
  }
  if (a.cols() != nets.dim() || b.cols() != nets.dim()) {
    throw nn::DimensionError("cyclegan: batches " + nn::shape_string(a.rows(), a.cols()) + " and " +
                             nn::shape_string(b.rows(), b.cols()) + " for networks of dim " +
                             std::to_string(nets.dim()));
  }
}

}  // namespace detail

/// Value of the generator objective; no gradients are touched.
template <typename Scalar>
LossTerms composite_loss(const Networks<Scalar>& nets, const Matrix<Scalar>& a, const Matrix<Scalar>& b,
                         const LossWeights& w) {
  detail::check_batches(nets, a, b);
  const Matrix<Scalar> fake_b = nets.g_a.apply(a);
  const Matrix<Scalar> fake_a = nets.g_b.apply(b);
  LossTerms t;
  t.gan_a = nn::mse_loss<Scalar>(nets.d_a.apply(fake_b), Scalar(1)).value;
  t.gan_b = nn::mse_loss<Scalar>(nets.d_b.apply(fake_a), Scalar(1)).value;
  t.cyc_a = nn::l1_loss<Scalar>(nets.g_b.apply(fake_b), a).value;
  t.cyc_b = nn::l1_loss<Scalar>(nets.g_a.apply(fake_a), b).value;
  t.id_a = nn::l1_loss<Scalar>(nets.g_b.apply(a), a).value;
  t.id_b = nn::l1_loss<Scalar>(nets.g_a.apply(b), b).value;
  t.total = t.weighted_sum(w);
  t.check_finite();
  return t;
}

/// Generator objective with gradients accumulated into g_a and g_b. The
/// discriminators are backpropagated through but their gradients are left
/// untouched.
template <typename Scalar>
LossTerms composite_loss_backward(Networks<Scalar>& nets, const Matrix<Scalar>& a,
                                  const Matrix<Scalar>& b, const LossWeights& w) {
  detail::check_batches(nets, a, b);
  using M = Matrix<Scalar>;
  nn::Trace<Scalar> ga_fwd, gb_fwd, gb_cyc, ga_cyc, gb_id, ga_id, da_tr, db_tr;

  const M fake_b = nets.g_a.forward(a, ga_fwd);
  const M fake_a = nets.g_b.forward(b, gb_fwd);
  const M rec_a = nets.g_b.forward(fake_b, gb_cyc);
  const M rec_b = nets.g_a.forward(fake_a, ga_cyc);
  const M same_a = nets.g_b.forward(a, gb_id);
  const M same_b = nets.g_a.forward(b, ga_id);
  const M score_a = nets.d_a.forward(fake_b, da_tr);
  const M score_b = nets.d_b.forward(fake_a, db_tr);

  const auto gan_a = nn::mse_loss<Scalar>(score_a, Scalar(1));
  const auto gan_b = nn::mse_loss<Scalar>(score_b, Scalar(1));
  const auto cyc_a = nn::l1_loss<Scalar>(rec_a, a);
  const auto cyc_b = nn::l1_loss<Scalar>(rec_b, b);
  const auto id_a = nn::l1_loss<Scalar>(same_a, a);
  const auto id_b = nn::l1_loss<Scalar>(same_b, b);

  LossTerms t{gan_a.value, gan_b.value, cyc_a.value, cyc_b.value, id_a.value, id_b.value, 0.0};
  t.total = t.weighted_sum(w);
  t.check_finite();

  const auto lc = static_cast<Scalar>(w.lambda_cyc);
  const auto li = static_cast<Scalar>(w.lambda_id);

  M d_fake_b = nets.d_a.backward(da_tr, gan_a.grad, false);
  M d_fake_a = nets.d_b.backward(db_tr, gan_b.grad, false);
  d_fake_b += nets.g_b.backward(gb_cyc, cyc_a.grad * lc);
  d_fake_a += nets.g_a.backward(ga_cyc, cyc_b.grad * lc);
  nets.g_b.backward(gb_id, id_a.grad * li);
  nets.g_a.backward(ga_id, id_b.grad * li);
  nets.g_a.backward(ga_fwd, d_fake_b);
  nets.g_b.backward(gb_fwd, d_fake_a);
  return t;
}

template <typename Scalar>
DiscriminatorTerms discriminator_loss(const Networks<Scalar>& nets, const Matrix<Scalar>& a,
                                      const Matrix<Scalar>& b) {
  detail::check_batches(nets, a, b);
  DiscriminatorTerms t;
  t.d_a = 0.5 * (nn::mse_loss<Scalar>(nets.d_a.apply(b), Scalar(1)).value +
                 nn::mse_loss<Scalar>(nets.d_a.apply(nets.g_a.apply(a)), Scalar(0)).value);
  t.d_b = 0.5 * (nn::mse_loss<Scalar>(nets.d_b.apply(a), Scalar(1)).value +
                 nn::mse_loss<Scalar>(nets.d_b.apply(nets.g_b.apply(b)), Scalar(0)).value);
  return t;
}

/// Least-squares discriminator objective; gradients go to d_a and d_b only
/// (generated inputs are treated as constants).
template <typename Scalar>
DiscriminatorTerms discriminator_loss_backward(Networks<Scalar>& nets, const Matrix<Scalar>& a,
                                               const Matrix<Scalar>& b) {
  detail::check_batches(nets, a, b);
  using M = Matrix<Scalar>;
  const M fake_b = nets.g_a.apply(a);
  const M fake_a = nets.g_b.apply(b);
  DiscriminatorTerms t;
  auto half_step = [](nn::Mlp<Scalar>& d, const M& real, const M& fake, double& value) {
    nn::Trace<Scalar> tr_real, tr_fake;
    const auto real_loss = nn::mse_loss<Scalar>(d.forward(real, tr_real), Scalar(1));
    const auto fake_loss = nn::mse_loss<Scalar>(d.forward(fake, tr_fake), Scalar(0));
    value = 0.5 * (real_loss.value + fake_loss.value);
    d.backward(tr_real, real_loss.grad * Scalar(0.5));
    d.backward(tr_fake, fake_loss.grad * Scalar(0.5));
  };
  half_step(nets.d_a, b, fake_b, t.d_a);
  half_step(nets.d_b, a, fake_a, t.d_b);
  if (!std::isfinite(t.d_a) || !std::isfinite(t.d_b)) {
    throw nn::NonFiniteError(std::string("cyclegan discriminator loss ") +
                             (std::isfinite(t.d_a) ? "d_b" : "d_a") + " is non-finite");
  }
  return t;
}

}  // namespace featgan::cyclegan

#endif  // FEATGAN_CYCLEGAN_CYCLEGAN_HPP
