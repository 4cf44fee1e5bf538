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

#ifndef FEATGAN_IO_POOLING_HPP
#define FEATGAN_IO_POOLING_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "featgan/io/format_error.hpp"
#include "featgan/io/fseq.hpp"
#include "featgan/io/manifest.hpp"
#include "featgan/nn/matrix.hpp"

namespace featgan::io {

/// Statistic pooling: per-dimension mean followed by the population
/// (divide by T) standard deviation, giving a 2D-long row.
template <typename Derived>
nn::RowVector<typename Derived::Scalar> stat_pool(const Eigen::MatrixBase<Derived>& frames) {
  using Scalar = typename Derived::Scalar;
  if (frames.rows() < 1 || frames.cols() < 1) {
    throw FormatError(FormatErrorKind::kEmpty, "stat_pool needs at least one frame");
  }
  const nn::Index dims = frames.cols();
  const auto x = frames.template cast<double>();
  const nn::RowVectorD mean = x.colwise().mean();
  const nn::RowVectorD var =
      (x.rowwise() - mean).array().square().colwise().sum().matrix() / static_cast<double>(x.rows());
  nn::RowVector<Scalar> out(2 * dims);
  out.head(dims) = mean.template cast<Scalar>();
  out.tail(dims) = var.cwiseSqrt().template cast<Scalar>();
  return out;
}

struct PooledVector {
  std::string utterance_id;
  nn::RowVectorF values;
};

inline PooledVector stat_pool(const FeatureSequence& seq) {
  return {seq.utterance_id, stat_pool(seq.values)};
}

/// Pooled vectors stacked as rows, with the manifest records they came from.
struct PooledSet {
  std::vector<SampleRecord> records;
  nn::MatrixF values;

  std::size_t size() const { return records.size(); }
  nn::Index dims() const { return values.cols(); }
};

/// The archive is an FSEQ file (one row per record) plus a sidecar
/// manifest at "<archive>.jsonl" listing the records in row order.
std::filesystem::path sidecar_path(const std::filesystem::path& archive);
void write_pooled(const PooledSet& set, const std::filesystem::path& archive);
/// Accepts the archive path or its sidecar path.
PooledSet read_pooled(const std::filesystem::path& path);

/// Pools the FSEQ file of every record. All sequences must share D.
PooledSet pool_manifest(const std::vector<SampleRecord>& records,
                        const std::filesystem::path& manifest_path);

/// Rows whose record satisfies `keep`.
template <typename Pred>
PooledSet filter_pooled(const PooledSet& set, Pred&& keep) {
  PooledSet out;
  std::vector<nn::Index> rows;
  for (std::size_t i = 0; i < set.records.size(); ++i) {
    if (keep(set.records[i])) {
      rows.push_back(static_cast<nn::Index>(i));
      out.records.push_back(set.records[i]);
    }
  }
  out.values.resize(static_cast<nn::Index>(rows.size()), set.values.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.values.row(static_cast<nn::Index>(i)) = set.values.row(rows[i]);
  }
  return out;
}

}  // namespace featgan::io

#endif  // FEATGAN_IO_POOLING_HPP
