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

#include "featgan/io/pooling.hpp"

namespace featgan::io {

std::filesystem::path sidecar_path(const std::filesystem::path& archive) {
  return std::filesystem::path(archive.string() + ".jsonl");
}

void write_pooled(const PooledSet& set, const std::filesystem::path& archive) {
  if (set.records.empty()) {
    throw FormatError(FormatErrorKind::kEmpty, "no pooled vectors to write");
  }
  if (static_cast<nn::Index>(set.records.size()) != set.values.rows()) {
    throw FormatError(FormatErrorKind::kMalformed, "record count does not match row count");
  }
  write_fseq(set.values, archive);
  write_manifest(set.records, sidecar_path(archive));
}

PooledSet read_pooled(const std::filesystem::path& path) {
  std::filesystem::path archive = path;
  if (path.extension() == ".jsonl") {
    archive = path.parent_path() / path.stem();
  }
  PooledSet set;
  set.values = read_fseq(archive).values;
  set.records = read_manifest(sidecar_path(archive));
  if (static_cast<nn::Index>(set.records.size()) != set.values.rows()) {
    throw FormatError(FormatErrorKind::kMalformed,
                      archive.string() + ": " + std::to_string(set.values.rows()) + " rows but " +
                          std::to_string(set.records.size()) + " sidecar records");
  }
  return set;
}

PooledSet pool_manifest(const std::vector<SampleRecord>& records,
                        const std::filesystem::path& manifest_path) {
  if (records.empty()) {
    throw FormatError(FormatErrorKind::kEmpty, "manifest " + manifest_path.string() + " has no records");
  }
  PooledSet set;
  set.records = records;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto seq = read_fseq(resolve_record_path(manifest_path, records[i].path));
    if (i == 0) {
      set.values.resize(static_cast<nn::Index>(records.size()), 2 * seq.dims());
    } else if (2 * seq.dims() != set.values.cols()) {
      throw FormatError(FormatErrorKind::kMalformed,
                        "mixed dims: record " + records[i].utterance_id + " has D=" +
                            std::to_string(seq.dims()) + ", expected " +
                            std::to_string(set.values.cols() / 2));
    }
    set.values.row(static_cast<nn::Index>(i)) = stat_pool(seq.values);
  }
  return set;
}

}  // namespace featgan::io
