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

#ifndef FEATGAN_FILTERING_TRANSCRIPT_HPP
#define FEATGAN_FILTERING_TRANSCRIPT_HPP

#include <string>
#include <string_view>

namespace featgan::filtering {

struct TranscriptPair {
  std::string asr_1;
  std::string asr_2;
};

enum class FilterDecision { kKeep, kReject };

/// Dual requires both recognizers to agree with the target; Single looks
/// only at asr_1 (ablation mode).
enum class FilterMode { kDual, kSingle };

/// Lowercase, keep only [a-z0-9' ], trim, collapse whitespace runs.
/// Bytes of multi-byte UTF-8 sequences are dropped like any other
/// character outside the whitelist.
std::string normalize_transcript(std::string_view s);

/// Throws std::invalid_argument unless `word` is a single, already
/// normalized token.
void validate_target(std::string_view word);

/// Keep iff every consulted hypothesis normalizes to exactly `target`.
FilterDecision agreement_filter(std::string_view target, const TranscriptPair& t,
                                FilterMode mode = FilterMode::kDual);

}  // namespace featgan::filtering

#endif  // FEATGAN_FILTERING_TRANSCRIPT_HPP
