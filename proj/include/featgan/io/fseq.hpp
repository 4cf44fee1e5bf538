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

#ifndef FEATGAN_IO_FSEQ_HPP
#define FEATGAN_IO_FSEQ_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "featgan/io/format_error.hpp"
#include "featgan/nn/matrix.hpp"

namespace featgan::io {

inline constexpr std::uint32_t kFseqVersion = 1;

/// T x D frame-level features, one frame per row.
struct FeatureSequence {
  std::string utterance_id;
  nn::MatrixF values;

  nn::Index frames() const { return values.rows(); }
  nn::Index dims() const { return values.cols(); }
};

// "FSEQ" | u32 version | u32 T | u32 D | T*D float32, all little-endian.
std::vector<std::uint8_t> encode_fseq(const nn::MatrixF& values);
nn::MatrixF decode_fseq(std::span<const std::uint8_t> bytes);

/// The utterance id of a sequence read from disk is the file stem.
FeatureSequence read_fseq(const std::filesystem::path& path);
void write_fseq(const nn::MatrixF& values, const std::filesystem::path& path);
inline void write_fseq(const FeatureSequence& seq, const std::filesystem::path& path) {
  write_fseq(seq.values, path);
}

}  // namespace featgan::io

#endif  // FEATGAN_IO_FSEQ_HPP
