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

#ifndef FEATGAN_NN_CHECKPOINT_HPP
#define FEATGAN_NN_CHECKPOINT_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "featgan/io/format_error.hpp"
#include "featgan/nn/mlp.hpp"

namespace featgan::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

enum class LayerKind : std::uint32_t {
  kLinear = 1,    // rows = out, cols = in; payload W (row-major) then b
  kRelu = 2,      // rows = 1, cols = width; no payload
  kTanh = 3,
  kSigmoid = 4,
  kIdentity = 5,
  kMinMaxScaler = 6,  // rows = 2, cols = D; payload per-dim min then max
};

struct CheckpointLayer {
  LayerKind kind = LayerKind::kLinear;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<float> payload;
};

/// "FGNN" | u32 version | u32 layer count | layers | u32 n | n bytes UTF-8
/// metadata. Each layer is u32 kind, u32 rows, u32 cols, float32 payload.
struct Checkpoint {
  std::vector<CheckpointLayer> layers;
  std::string metadata;
};

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);
void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Appends one linear layer and one activation layer per stage.
void append_layers(const Mlp<float>& net, std::vector<CheckpointLayer>& out);

/// Rebuilds a network from `count` consecutive layers starting at `pos`
/// (linear/activation pairs); advances `pos`.
Mlp<float> mlp_from_layers(std::span<const CheckpointLayer> layers, std::size_t& pos,
                           std::size_t stage_count);

}  // namespace featgan::nn

#endif  // FEATGAN_NN_CHECKPOINT_HPP
