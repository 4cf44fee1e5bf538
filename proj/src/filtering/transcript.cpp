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

#include "featgan/filtering/transcript.hpp"

#include <stdexcept>

namespace featgan::filtering {

std::string normalize_transcript(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char raw : s) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
    const bool is_space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (is_space) {
      pending_space = !out.empty();
      continue;
    }
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'')) {
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

void validate_target(std::string_view word) {
  if (word.empty()) {
    throw std::invalid_argument("target word is empty");
  }
  if (normalize_transcript(word) != word) {
    throw std::invalid_argument("target '" + std::string(word) + "' is not normalized");
  }
  if (word.find(' ') != std::string_view::npos) {
    throw std::invalid_argument("target '" + std::string(word) + "' is not a single word");
  }
}

FilterDecision agreement_filter(std::string_view target, const TranscriptPair& t, FilterMode mode) {
  if (normalize_transcript(t.asr_1) != target) {
    return FilterDecision::kReject;
  }
  if (mode == FilterMode::kDual && normalize_transcript(t.asr_2) != target) {
    return FilterDecision::kReject;
  }
  return FilterDecision::kKeep;
}

}  // namespace featgan::filtering
