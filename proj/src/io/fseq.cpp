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

#include "featgan/io/fseq.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "featgan/io/binary.hpp"

namespace featgan::io {

std::string_view to_string(FormatErrorKind kind) {
  switch (kind) {
    case FormatErrorKind::kIo:
      return "io error";
    case FormatErrorKind::kBadMagic:
      return "bad magic";
    case FormatErrorKind::kUnsupportedVersion:
      return "unsupported version";
    case FormatErrorKind::kTruncated:
      return "truncated";
    case FormatErrorKind::kOverflow:
      return "size overflow";
    case FormatErrorKind::kEmpty:
      return "empty";
    case FormatErrorKind::kNonFinite:
      return "non-finite value";
    case FormatErrorKind::kMalformed:
      break;
  }
  return "malformed";
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError(FormatErrorKind::kIo, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw FormatError(FormatErrorKind::kIo, "read failed for " + path.string());
  }
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError(FormatErrorKind::kIo, "cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw FormatError(FormatErrorKind::kIo, "write failed for " + path.string());
  }
}

std::vector<std::uint8_t> encode_fseq(const nn::MatrixF& values) {
  if (values.rows() < 1 || values.cols() < 1) {
    throw FormatError(FormatErrorKind::kEmpty, "feature sequence has no frames or no dims");
  }
  if (!values.allFinite()) {
    throw FormatError(FormatErrorKind::kNonFinite, "refusing to write non-finite features");
  }
  std::vector<std::uint8_t> out;
  out.reserve(16 + 4 * static_cast<std::size_t>(values.size()));
  for (char c : {'F', 'S', 'E', 'Q'}) {
    out.push_back(static_cast<std::uint8_t>(c));
  }
  put_u32(out, kFseqVersion);
  put_u32(out, static_cast<std::uint32_t>(values.rows()));
  put_u32(out, static_cast<std::uint32_t>(values.cols()));
  for (nn::Index i = 0; i < values.size(); ++i) {
    put_f32(out, values.data()[i]);
  }
  return out;
}

nn::MatrixF decode_fseq(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.take(4, "magic");
  if (magic[0] != 'F' || magic[1] != 'S' || magic[2] != 'E' || magic[3] != 'Q') {
    throw FormatError(FormatErrorKind::kBadMagic, "expected FSEQ");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kFseqVersion) {
    throw FormatError(FormatErrorKind::kUnsupportedVersion, "FSEQ version " + std::to_string(version));
  }
  const std::uint64_t frames = r.u32("frame count");
  const std::uint64_t dims = r.u32("dimension");
  if (frames == 0 || dims == 0) {
    throw FormatError(FormatErrorKind::kEmpty,
                      "header declares " + std::to_string(frames) + "x" + std::to_string(dims));
  }
  const std::uint64_t count = frames * dims;  // < 2^64 since both < 2^32
  if (count > static_cast<std::uint64_t>(std::numeric_limits<std::ptrdiff_t>::max()) / 4) {
    throw FormatError(FormatErrorKind::kOverflow, std::to_string(frames) + " frames x " +
                                                      std::to_string(dims) + " dims");
  }
  r.require(count * 4, "payload");
  nn::MatrixF values(static_cast<nn::Index>(frames), static_cast<nn::Index>(dims));
  for (std::uint64_t i = 0; i < count; ++i) {
    const float v = r.f32("payload");
    if (!std::isfinite(v)) {
      throw FormatError(FormatErrorKind::kNonFinite, "element " + std::to_string(i));
    }
    values.data()[i] = v;
  }
  if (r.remaining() != 0) {
    throw FormatError(FormatErrorKind::kMalformed,
                      std::to_string(r.remaining()) + " trailing bytes after payload");
  }
  return values;
}

FeatureSequence read_fseq(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return {path.stem().string(), decode_fseq(bytes)};
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path.string() + ": " + e.detail());
  }
}

void write_fseq(const nn::MatrixF& values, const std::filesystem::path& path) {
  write_file_bytes(path, encode_fseq(values));
}

}  // namespace featgan::io
