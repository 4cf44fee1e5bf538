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

#include "featgan/io/manifest.hpp"

#include <fstream>

#include "json.hpp"

namespace featgan::io {

namespace {

using Json = nlohmann::ordered_json;

std::string require_string(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(FormatErrorKind::kMalformed, std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    throw FormatError(FormatErrorKind::kMalformed, std::string("field '") + key + "' is not a string");
  }
  return it->get<std::string>();
}

}  // namespace

SampleRecord parse_record(std::string_view line) {
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(FormatErrorKind::kMalformed, e.what());
  }
  if (!obj.is_object()) {
    throw FormatError(FormatErrorKind::kMalformed, "record is not an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (key != "utterance_id" && key != "label" && key != "domain" && key != "split" &&
        key != "path" && key != "transcript_1" && key != "transcript_2") {
      throw FormatError(FormatErrorKind::kMalformed, "unknown field '" + key + "'");
    }
  }
  SampleRecord r;
  r.utterance_id = require_string(obj, "utterance_id");
  if (r.utterance_id.empty()) {
    throw FormatError(FormatErrorKind::kMalformed, "empty utterance_id");
  }
  const std::string label = require_string(obj, "label");
  auto idx = class_index(label);
  if (!idx) {
    throw FormatError(FormatErrorKind::kMalformed, "label '" + label + "' is not a known class");
  }
  r.label = *idx;
  const std::string domain = require_string(obj, "domain");
  auto d = parse_domain(domain);
  if (!d) {
    throw FormatError(FormatErrorKind::kMalformed, "domain '" + domain + "'");
  }
  r.domain = *d;
  const std::string split = require_string(obj, "split");
  auto s = parse_split(split);
  if (!s) {
    throw FormatError(FormatErrorKind::kMalformed, "split '" + split + "'");
  }
  r.split = *s;
  r.path = require_string(obj, "path");
  if (r.path.empty()) {
    throw FormatError(FormatErrorKind::kMalformed, "empty path");
  }
  const bool has1 = obj.contains("transcript_1");
  const bool has2 = obj.contains("transcript_2");
  if (has1 != has2) {
    throw FormatError(FormatErrorKind::kMalformed, "transcript_1 and transcript_2 must come together");
  }
  if (has1) {
    r.transcripts.emplace(require_string(obj, "transcript_1"), require_string(obj, "transcript_2"));
  }
  return r;
}

std::string serialize_record(const SampleRecord& record) {
  Json obj;
  obj["utterance_id"] = record.utterance_id;
  obj["label"] = std::string(class_name(record.label));
  obj["domain"] = std::string(to_string(record.domain));
  obj["split"] = std::string(to_string(record.split));
  obj["path"] = record.path;
  if (record.transcripts) {
    obj["transcript_1"] = record.transcripts->first;
    obj["transcript_2"] = record.transcripts->second;
  }
  return obj.dump();
}

std::vector<SampleRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError(FormatErrorKind::kIo, "cannot open manifest " + path.string());
  }
  std::vector<SampleRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      records.push_back(parse_record(line));
    } catch (const FormatError& e) {
      throw FormatError(e.kind(), path.string() + ":" + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return records;
}

void write_manifest(const std::vector<SampleRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw FormatError(FormatErrorKind::kIo, "cannot write manifest " + path.string());
  }
  for (const auto& r : records) {
    out << serialize_record(r) << '\n';
  }
  if (!out) {
    throw FormatError(FormatErrorKind::kIo, "write failed for " + path.string());
  }
}

std::filesystem::path resolve_record_path(const std::filesystem::path& manifest,
                                          const std::string& record_path) {
  std::filesystem::path p(record_path);
  if (p.is_absolute()) {
    return p;
  }
  return manifest.parent_path() / p;
}

}  // namespace featgan::io
