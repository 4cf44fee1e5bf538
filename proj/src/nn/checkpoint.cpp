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

#include "featgan/nn/checkpoint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "featgan/io/binary.hpp"

namespace featgan::nn {

using io::FormatError;
using io::FormatErrorKind;

namespace {

std::uint64_t payload_size(LayerKind kind, std::uint64_t rows, std::uint64_t cols) {
  switch (kind) {
    case LayerKind::kLinear:
      return rows * cols + rows;
    case LayerKind::kMinMaxScaler:
      return rows * cols;
    case LayerKind::kRelu:
    case LayerKind::kTanh:
    case LayerKind::kSigmoid:
    case LayerKind::kIdentity:
      return 0;
  }
  throw FormatError(FormatErrorKind::kMalformed,
                    "unknown layer kind " + std::to_string(static_cast<std::uint32_t>(kind)));
}

LayerKind kind_of(Activation a) {
  switch (a) {
    case Activation::kRelu:
      return LayerKind::kRelu;
    case Activation::kTanh:
      return LayerKind::kTanh;
    case Activation::kSigmoid:
      return LayerKind::kSigmoid;
    case Activation::kIdentity:
      break;
  }
  return LayerKind::kIdentity;
}

Activation activation_of(LayerKind k) {
  switch (k) {
    case LayerKind::kRelu:
      return Activation::kRelu;
    case LayerKind::kTanh:
      return Activation::kTanh;
    case LayerKind::kSigmoid:
      return Activation::kSigmoid;
    case LayerKind::kIdentity:
      return Activation::kIdentity;
    default:
      break;
  }
  throw FormatError(FormatErrorKind::kMalformed, "expected an activation layer");
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& ckpt) {
  std::vector<std::uint8_t> out;
  for (char c : {'F', 'G', 'N', 'N'}) {
    out.push_back(static_cast<std::uint8_t>(c));
  }
  io::put_u32(out, kCheckpointVersion);
  io::put_u32(out, static_cast<std::uint32_t>(ckpt.layers.size()));
  for (const auto& layer : ckpt.layers) {
    if (layer.payload.size() != payload_size(layer.kind, layer.rows, layer.cols)) {
      throw FormatError(FormatErrorKind::kMalformed, "layer payload does not match its dims");
    }
    io::put_u32(out, static_cast<std::uint32_t>(layer.kind));
    io::put_u32(out, layer.rows);
    io::put_u32(out, layer.cols);
    for (float v : layer.payload) {
      io::put_f32(out, v);
    }
  }
  io::put_u32(out, static_cast<std::uint32_t>(ckpt.metadata.size()));
  out.insert(out.end(), ckpt.metadata.begin(), ckpt.metadata.end());
  return out;
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes) {
  io::ByteReader r(bytes);
  auto magic = r.take(4, "magic");
  if (magic[0] != 'F' || magic[1] != 'G' || magic[2] != 'N' || magic[3] != 'N') {
    throw FormatError(FormatErrorKind::kBadMagic, "expected FGNN");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kCheckpointVersion) {
    throw FormatError(FormatErrorKind::kUnsupportedVersion,
                      "checkpoint version " + std::to_string(version));
  }
  const std::uint32_t count = r.u32("layer count");
  Checkpoint ckpt;
  for (std::uint32_t i = 0; i < count; ++i) {
    CheckpointLayer layer;
    layer.kind = static_cast<LayerKind>(r.u32("layer kind"));
    layer.rows = r.u32("layer rows");
    layer.cols = r.u32("layer cols");
    const std::uint64_t n = payload_size(layer.kind, layer.rows, layer.cols);
    if (n > static_cast<std::uint64_t>(PTRDIFF_MAX) / 4) {
      throw FormatError(FormatErrorKind::kOverflow, "layer " + std::to_string(i));
    }
    r.require(n * 4, "layer payload");
    layer.payload.resize(n);
    for (auto& v : layer.payload) {
      v = r.f32("layer payload");
      if (!std::isfinite(v)) {
        throw FormatError(FormatErrorKind::kNonFinite, "layer " + std::to_string(i));
      }
    }
    ckpt.layers.push_back(std::move(layer));
  }
  const std::uint32_t meta = r.u32("metadata length");
  auto text = r.take(meta, "metadata");
  ckpt.metadata.assign(text.begin(), text.end());
  if (r.remaining() != 0) {
    throw FormatError(FormatErrorKind::kMalformed, "trailing bytes after metadata");
  }
  return ckpt;
}

void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  io::write_file_bytes(path, encode_checkpoint(ckpt));
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  const auto bytes = io::read_file_bytes(path);
  try {
    return decode_checkpoint(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path.string() + ": " + e.detail());
  }
}

void append_layers(const Mlp<float>& net, std::vector<CheckpointLayer>& out) {
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& l = net.layer(i);
    CheckpointLayer lin;
    lin.kind = LayerKind::kLinear;
    lin.rows = static_cast<std::uint32_t>(l.out_dim());
    lin.cols = static_cast<std::uint32_t>(l.in_dim());
    lin.payload.assign(l.weight().data(), l.weight().data() + l.weight().size());
    lin.payload.insert(lin.payload.end(), l.bias().data(), l.bias().data() + l.bias().size());
    out.push_back(std::move(lin));
    out.push_back({kind_of(net.activation(i)), 1, static_cast<std::uint32_t>(l.out_dim()), {}});
  }
}

Mlp<float> mlp_from_layers(std::span<const CheckpointLayer> layers, std::size_t& pos,
                           std::size_t stage_count) {
  Mlp<float> net;
  for (std::size_t s = 0; s < stage_count; ++s) {
    if (pos + 2 > layers.size()) {
      throw FormatError(FormatErrorKind::kMalformed, "checkpoint ends inside a network");
    }
    const auto& lin = layers[pos];
    const auto& act = layers[pos + 1];
    if (lin.kind != LayerKind::kLinear) {
      throw FormatError(FormatErrorKind::kMalformed,
                        "expected a linear layer at index " + std::to_string(pos));
    }
    LinearLayer<float> layer(lin.cols, lin.rows);
    std::copy(lin.payload.begin(), lin.payload.begin() + layer.weight().size(), layer.weight().data());
    std::copy(lin.payload.begin() + layer.weight().size(), lin.payload.end(), layer.bias().data());
    try {
      net.add(std::move(layer), activation_of(act.kind));
    } catch (const DimensionError& e) {
      throw FormatError(FormatErrorKind::kMalformed, e.what());
    }
    pos += 2;
  }
  return net;
}

}  // namespace featgan::nn
