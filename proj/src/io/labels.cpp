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

#include "featgan/io/labels.hpp"

#include <stdexcept>

namespace featgan::io {

std::optional<int> class_index(std::string_view name) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (kClassNames[static_cast<std::size_t>(i)] == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::string_view class_name(int index) {
  if (index < 0 || index >= kNumClasses) {
    throw std::out_of_range("class index " + std::to_string(index));
  }
  return kClassNames[static_cast<std::size_t>(index)];
}

int class_for_word(std::string_view word) {
  auto idx = class_index(word);
  return idx ? *idx : kUnknownClass;
}

std::string_view to_string(Domain d) { return d == Domain::kReal ? "real" : "synthetic"; }

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      break;
  }
  return "test";
}

std::optional<Domain> parse_domain(std::string_view s) {
  if (s == "real") return Domain::kReal;
  if (s == "synthetic") return Domain::kSynthetic;
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "valid") return Split::kValid;
  if (s == "test") return Split::kTest;
  return std::nullopt;
}

}  // namespace featgan::io
