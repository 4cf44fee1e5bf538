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

#ifndef FEATGAN_IO_LABELS_HPP
#define FEATGAN_IO_LABELS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace featgan::io {

/// Ten commands in their canonical order, then the catch-all class.
inline constexpr std::array<std::string_view, 11> kClassNames = {
    "yes", "no", "up", "down", "left", "right", "on", "off", "stop", "go", "unknown"};
inline constexpr int kNumClasses = static_cast<int>(kClassNames.size());
inline constexpr int kUnknownClass = kNumClasses - 1;

std::optional<int> class_index(std::string_view name);
std::string_view class_name(int index);

/// Command words map to their class; every other word maps to unknown.
int class_for_word(std::string_view word);

enum class Domain { kReal, kSynthetic };
enum class Split { kTrain, kValid, kTest };

std::string_view to_string(Domain d);
std::string_view to_string(Split s);
std::optional<Domain> parse_domain(std::string_view s);
std::optional<Split> parse_split(std::string_view s);

}  // namespace featgan::io

#endif  // FEATGAN_IO_LABELS_HPP
