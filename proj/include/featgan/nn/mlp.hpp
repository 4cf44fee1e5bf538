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

#ifndef FEATGAN_NN_MLP_HPP
#define FEATGAN_NN_MLP_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "featgan/nn/activation.hpp"
#include "featgan/nn/linear.hpp"

namespace featgan::nn {

/// Intermediate values of one forward pass through an Mlp. Keeping them
/// outside the network lets the same network be applied several times
/// before any backward pass.
template <typename Scalar>
struct Trace {
  std::vector<Matrix<Scalar>> inputs;  // input of each linear layer
  std::vector<Matrix<Scalar>> pre;     // linear output, before activation
  std::vector<Matrix<Scalar>> out;     // activation output

  /// Smallest |pre-activation| over ReLU stages (distance to the kink).
  Scalar relu_margin(const std::vector<Activation>& kinds) const;
};

/// A fixed stack of (linear, activation) stages.
template <typename Scalar>
class Mlp {
 public:
  using MatrixType = Matrix<Scalar>;

  Mlp() = default;

  void add(LinearLayer<Scalar> layer, Activation activation) {
    if (!layers_.empty() && layers_.back().out_dim() != layer.in_dim()) {
      throw DimensionError("mlp: layer input " + std::to_string(layer.in_dim()) +
                           " does not follow output " +
                           std::to_string(layers_.back().out_dim()));
    }
    layers_.push_back(std::move(layer));
    activations_.push_back(activation);
  }

  std::size_t size() const { return layers_.size(); }
  Index in_dim() const { return layers_.empty() ? 0 : layers_.front().in_dim(); }
  Index out_dim() const { return layers_.empty() ? 0 : layers_.back().out_dim(); }

  LinearLayer<Scalar>& layer(std::size_t i) { return layers_[i]; }
  const LinearLayer<Scalar>& layer(std::size_t i) const { return layers_[i]; }
  Activation activation(std::size_t i) const { return activations_[i]; }
  const std::vector<Activation>& activations() const { return activations_; }

  MatrixType apply(const MatrixType& x) const {
    MatrixType h = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      h = activate(activations_[i], layers_[i].apply(h));
    }
    return h;
  }

  MatrixType forward(const MatrixType& x, Trace<Scalar>& trace) const {
    trace.inputs.clear();
    trace.pre.clear();
    trace.out.clear();
    MatrixType h = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      trace.inputs.push_back(h);
      trace.pre.push_back(layers_[i].apply(h));
      trace.out.push_back(activate(activations_[i], trace.pre.back()));
      h = trace.out.back();
    }
    return h;
  }

  /// Returns dL/dx. Parameter gradients are added to the layers' buffers
  /// unless accumulate_params is false (used when backpropagating through
  /// a network that is held fixed for this update).
  MatrixType backward(const Trace<Scalar>& trace, const MatrixType& dy,
                      bool accumulate_params = true) {
    if (trace.inputs.size() != layers_.size()) {
      throw StaleCacheError("mlp backward: trace does not belong to a forward pass of this network");
    }
    MatrixType g = dy;
    for (std::size_t i = layers_.size(); i-- > 0;) {
      g = activation_backward(activations_[i], trace.out[i], g);
      g = layers_[i].backward_from(trace.inputs[i], g, accumulate_params);
    }
    return g;
  }

  /// Forward pass cached inside the network, for single-use call sites.
  MatrixType forward(const MatrixType& x) {
    cached_.emplace();
    return forward(x, *cached_);
  }

  MatrixType backward(const MatrixType& dy) {
    if (!cached_) {
      throw StaleCacheError("mlp backward called without a preceding forward");
    }
    MatrixType dx = backward(*cached_, dy, true);
    cached_.reset();
    return dx;
  }

  void zero_grad() {
    for (auto& l : layers_) {
      l.zero_grad();
    }
  }

  std::vector<ParamRef<Scalar>> parameters(const std::string& prefix) {
    std::vector<ParamRef<Scalar>> out;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      layers_[i].append_parameters(prefix + ".layer" + std::to_string(i), out);
    }
    return out;
  }

  template <typename Other>
  Mlp<Other> cast() const {
    Mlp<Other> out;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      out.add(layers_[i].template cast<Other>(), activations_[i]);
    }
    return out;
  }

 private:
  std::vector<LinearLayer<Scalar>> layers_;
  std::vector<Activation> activations_;
  std::optional<Trace<Scalar>> cached_;
};

template <typename Scalar>
Scalar Trace<Scalar>::relu_margin(const std::vector<Activation>& kinds) const {
  Scalar m = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < pre.size() && i < kinds.size(); ++i) {
    if (kinds[i] == Activation::kRelu && pre[i].size() > 0) {
      m = std::min(m, pre[i].cwiseAbs().minCoeff());
    }
  }
  return m;
}

/// Hidden layers use ReLU, the last layer uses `head`.
template <typename Scalar>
Mlp<Scalar> make_mlp(const std::vector<Index>& dims, Activation head, Rng& rng) {
  Mlp<Scalar> net;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    LinearLayer<Scalar> layer(dims[i], dims[i + 1]);
    layer.init_fan_in(rng);
    net.add(std::move(layer), i + 2 == dims.size() ? head : Activation::kRelu);
  }
  return net;
}

}  // namespace featgan::nn

#endif  // FEATGAN_NN_MLP_HPP
