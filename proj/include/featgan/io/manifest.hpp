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

#ifndef FEATGAN_IO_MANIFEST_HPP
#define FEATGAN_IO_MANIFEST_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "featgan/io/format_error.hpp"
#include "featgan/io/labels.hpp"

namespace featgan::io {

struct SampleRecord {
  std::string utterance_id;
  int label = kUnknownClass;
  Domain domain = Domain::kReal;
  Split split = Split::kTrain;
  std::string path;
  std::optional<std::pair<std::string, std::string>> transcripts;

  bool operator==(const SampleRecord&) const = default;
};

// Manifests are JSON Lines, one object per record with the keys
// utterance_id, label, domain, split, path and optionally transcript_1 and
// transcript_2 (both or neither). Other keys are rejected.

SampleRecord parse_record(std::string_view line);
std::string serialize_record(const SampleRecord& record);

std::vector<SampleRecord> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<SampleRecord>& records, const std::filesystem::path& path);

/// Relative record paths are resolved against the manifest's directory.
std::filesystem::path resolve_record_path(const std::filesystem::path& manifest,
                                          const std::string& record_path);

}  // namespace featgan::io

#endif  // FEATGAN_IO_MANIFEST_HPP
