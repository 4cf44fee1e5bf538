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

#include "featgan/filtering/voice_pool.hpp"

#include <fstream>
#include <numeric>
#include <unordered_set>

#include "featgan/io/format_error.hpp"
#include "json.hpp"

namespace featgan::filtering {

VoicePool::VoicePool(std::vector<Donor> donors) : donors_(std::move(donors)) {
  std::unordered_set<std::string> seen;
  for (const auto& d : donors_) {
    if (!seen.insert(d.utterance_id).second) {
      throw std::invalid_argument("voice pool: duplicate donor utterance " + d.utterance_id);
    }
  }
  available_.resize(donors_.size());
  std::iota(available_.begin(), available_.end(), std::size_t{0});
}

VoicePool VoicePool::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw io::FormatError(io::FormatErrorKind::kIo, "cannot open voice list " + path.string());
  }
  std::vector<Donor> donors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const auto obj = nlohmann::json::parse(line);
      Donor d{obj.at("utterance_id").get<std::string>(), obj.at("speaker_id").get<std::string>(),
              obj.at("path").get<std::string>()};
      if (!std::filesystem::path(d.path).is_absolute()) {
        d.path = (path.parent_path() / d.path).string();
      }
      donors.push_back(std::move(d));
    } catch (const nlohmann::json::exception& e) {
      throw io::FormatError(io::FormatErrorKind::kMalformed,
                            path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return VoicePool(std::move(donors));
}

const Donor& VoicePool::draw(Rng& rng) {
  if (available_.empty()) {
    throw PoolExhausted("voice pool exhausted after " + std::to_string(donors_.size()) + " draws");
  }
  const std::size_t j = static_cast<std::size_t>(rng.below(available_.size()));
  const std::size_t chosen = available_[j];
  available_[j] = available_.back();
  available_.pop_back();
  return donors_[chosen];
}

}  // namespace featgan::filtering
