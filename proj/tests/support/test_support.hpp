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

#ifndef FEATGAN_TESTS_SUPPORT_TEST_SUPPORT_HPP
#define FEATGAN_TESTS_SUPPORT_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "featgan/cyclegan/cyclegan.hpp"
#include "featgan/io/wav.hpp"
#include "featgan/nn/matrix.hpp"
#include "featgan/nn/random.hpp"
#include "json.hpp"

namespace featgan::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(FEATGAN_TEST_DATA_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline nlohmann::json load_json(const std::string& name) {
  return nlohmann::json::parse(read_text(data_path(name)));
}

template <typename S = double>
nn::Matrix<S> matrix_from_json(const nlohmann::json& rows) {
  nn::Matrix<S> m(static_cast<nn::Index>(rows.size()), static_cast<nn::Index>(rows.at(0).size()));
  for (nn::Index i = 0; i < m.rows(); ++i) {
    for (nn::Index j = 0; j < m.cols(); ++j) m(i, j) = rows.at(i).at(j).get<S>();
  }
  return m;
}

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 gen(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("featgan_test_" + std::to_string(gen()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// The three-tone clip the MFCC reference was computed on.
inline io::AudioClip reference_clip() {
  io::AudioClip clip;
  clip.sample_rate = 16000;
  clip.samples.resize(4000);
  for (std::size_t i = 0; i < clip.samples.size(); ++i) {
    const double n = static_cast<double>(i);
    const double x = 0.5 * std::sin(2 * std::numbers::pi * 440.0 * n / 16000) +
                     0.25 * std::sin(2 * std::numbers::pi * 1234.5 * n / 16000) +
                     0.1 * std::sin(2 * std::numbers::pi * 3000.0 * n / 16000 + 0.3);
    clip.samples[i] = static_cast<float>(x);
  }
  return clip;
}

template <typename S>
nn::Matrix<S> gaussian(Rng& rng, nn::Index rows, nn::Index cols, double stddev = 1.0) {
  nn::Matrix<S> m(rows, cols);
  for (nn::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<S>(stddev * rng.normal());
  return m;
}

template <typename S>
nn::Matrix<S> uniform(Rng& rng, nn::Index rows, nn::Index cols, double lo, double hi) {
  nn::Matrix<S> m(rows, cols);
  for (nn::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<S>(rng.uniform(lo, hi));
  return m;
}

/// Two unit-covariance clouds whose centroids are `distance` apart along a
/// random unit direction. A is centred at the origin.
struct TwoClouds {
  nn::MatrixF a;
  nn::MatrixF b;
  nn::RowVectorD centroid_a;
  nn::RowVectorD centroid_b;
};

inline TwoClouds two_clouds(std::uint64_t seed, nn::Index dims, nn::Index points, double distance) {
  Rng rng(seed);
  nn::RowVectorD dir(dims);
  for (nn::Index j = 0; j < dims; ++j) dir(j) = rng.normal();
  dir /= dir.norm();
  TwoClouds c;
  c.centroid_a = nn::RowVectorD::Zero(dims);
  c.centroid_b = distance * dir;
  c.a = gaussian<float>(rng, points, dims);
  c.b = gaussian<float>(rng, points, dims);
  c.b.rowwise() += c.centroid_b.cast<float>();
  return c;
}

inline double mean_distance_to(const nn::MatrixF& x, const nn::RowVectorD& point) {
  double s = 0.0;
  for (nn::Index i = 0; i < x.rows(); ++i) s += (x.row(i).cast<double>() - point).norm();
  return s / static_cast<double>(x.rows());
}

/// Linearly separable classes: class k is centred at `spread` times the
/// k-th coordinate axis with isotropic noise of scale `noise`.
inline std::pair<nn::MatrixF, std::vector<int>> separable_classes(Rng& rng, int classes, nn::Index dims,
                                                                  nn::Index per_class, double spread,
                                                                  double noise) {
  nn::MatrixF x = gaussian<float>(rng, classes * per_class, dims, noise);
  std::vector<int> labels(static_cast<std::size_t>(x.rows()));
  for (nn::Index i = 0; i < x.rows(); ++i) {
    const int k = static_cast<int>(i % classes);
    labels[static_cast<std::size_t>(i)] = k;
    x(i, k) += static_cast<float>(spread);
  }
  return {x, labels};
}

/// Fresh layers start with zero biases, which puts ReLU inputs exactly on
/// the kink whenever a whole hidden row is inactive. Gradient checks draw
/// biases instead.
template <typename S>
void randomize_biases(cyclegan::Networks<S>& nets, Rng& rng, double bound = 0.5) {
  for (auto* net : {&nets.g_a, &nets.g_b, &nets.d_a, &nets.d_b}) {
    for (std::size_t i = 0; i < net->size(); ++i) {
      auto& b = net->layer(i).bias();
      for (nn::Index j = 0; j < b.size(); ++j) b(j) = static_cast<S>(rng.uniform(-bound, bound));
    }
  }
}

/// Smallest distance of any ReLU pre-activation or L1 residual to its kink
/// over every network application inside the CycleGAN objectives.
template <typename S>
double cyclegan_kink_margin(const cyclegan::Networks<S>& nets, const nn::Matrix<S>& a, const nn::Matrix<S>& b) {
  double margin = std::numeric_limits<double>::infinity();
  auto through = [&](const nn::Mlp<S>& net, const nn::Matrix<S>& x) {
    nn::Trace<S> tr;
    nn::Matrix<S> y = net.forward(x, tr);
    margin = std::min(margin, static_cast<double>(tr.relu_margin(net.activations())));
    return y;
  };
  auto residual = [&](const nn::Matrix<S>& y, const nn::Matrix<S>& t) {
    margin = std::min(margin, static_cast<double>((y - t).cwiseAbs().minCoeff()));
  };
  const nn::Matrix<S> fake_b = through(nets.g_a, a);
  const nn::Matrix<S> fake_a = through(nets.g_b, b);
  residual(through(nets.g_b, fake_b), a);
  residual(through(nets.g_a, fake_a), b);
  residual(through(nets.g_b, a), a);
  residual(through(nets.g_a, b), b);
  for (const auto* x : {&fake_b, &b}) through(nets.d_a, *x);
  for (const auto* x : {&fake_a, &a}) through(nets.d_b, *x);
  return margin;
}

struct FilterGoldenRow {
  std::string target, asr_1, asr_2;
  bool keep = false;
};

/// The agreement-filter decision table in data/filter_golden.tsv.
inline std::vector<FilterGoldenRow> filter_golden_rows() {
  std::istringstream in(read_text(data_path("filter_golden.tsv")));
  std::vector<FilterGoldenRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
      f.push_back(line.substr(start, tab - start));
    }
    f.push_back(line.substr(start));
    if (f.size() != 4) throw std::runtime_error("filter_golden.tsv: bad row: " + line);
    rows.push_back({f[0], f[1], f[2], f[3] == "keep"});
  }
  return rows;
}

}  // namespace featgan::testing

#endif  // FEATGAN_TESTS_SUPPORT_TEST_SUPPORT_HPP
