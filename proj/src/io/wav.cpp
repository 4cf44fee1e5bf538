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

#include "featgan/io/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "featgan/io/binary.hpp"

namespace featgan::io {

namespace {

std::uint16_t u16(std::span<const std::uint8_t> b) {
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

AudioClip read_wav(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  ByteReader r(bytes);
  auto riff = r.take(4, "RIFF tag");
  r.u32("RIFF size");
  auto wave = r.take(4, "WAVE tag");
  if (std::memcmp(riff.data(), "RIFF", 4) != 0 || std::memcmp(wave.data(), "WAVE", 4) != 0) {
    throw FormatError(FormatErrorKind::kBadMagic, path.string() + ": not a RIFF/WAVE file");
  }
  int format = 0, channels = 0, bits = 0;
  AudioClip clip;
  bool have_fmt = false;
  while (r.remaining() >= 8) {
    auto id = r.take(4, "chunk id");
    const std::uint32_t size = r.u32("chunk size");
    auto body = r.take(size, "chunk body");
    if (size % 2 == 1 && r.remaining() > 0) {
      r.take(1, "chunk pad");
    }
    if (std::memcmp(id.data(), "fmt ", 4) == 0) {
      if (size < 16) {
        throw FormatError(FormatErrorKind::kMalformed, path.string() + ": short fmt chunk");
      }
      format = u16(body.subspan(0, 2));
      channels = u16(body.subspan(2, 2));
      ByteReader fr(body.subspan(4, 4));
      clip.sample_rate = static_cast<int>(fr.u32("sample rate"));
      bits = u16(body.subspan(14, 2));
      if (format == 0xFFFE && size >= 26) {
        format = u16(body.subspan(24, 2));  // WAVE_FORMAT_EXTENSIBLE subformat
      }
      have_fmt = true;
    } else if (std::memcmp(id.data(), "data", 4) == 0) {
      if (!have_fmt) {
        throw FormatError(FormatErrorKind::kMalformed, path.string() + ": data before fmt");
      }
      if (channels != 1) {
        throw FormatError(FormatErrorKind::kMalformed,
                          path.string() + ": expected mono, got " + std::to_string(channels) + " channels");
      }
      ByteReader dr(body);
      if (format == 1 && bits == 16) {
        clip.samples.resize(body.size() / 2);
        for (auto& s : clip.samples) {
          s = static_cast<float>(static_cast<std::int16_t>(u16(dr.take(2, "sample")))) / 32768.0f;
        }
      } else if (format == 3 && bits == 32) {
        clip.samples.resize(body.size() / 4);
        for (auto& s : clip.samples) {
          s = dr.f32("sample");
        }
      } else {
        throw FormatError(FormatErrorKind::kMalformed,
                          path.string() + ": unsupported encoding (format " + std::to_string(format) +
                              ", " + std::to_string(bits) + " bits)");
      }
      return clip;
    }
  }
  throw FormatError(FormatErrorKind::kTruncated, path.string() + ": no data chunk");
}

void write_wav(const AudioClip& clip, const std::filesystem::path& path) {
  std::vector<std::uint8_t> out;
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  for (char c : {'R', 'I', 'F', 'F'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, 36 + data_bytes);
  for (char c : {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  for (char c : {'d', 'a', 't', 'a'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, data_bytes);
  for (float s : clip.samples) {
    const long q = std::clamp(std::lround(static_cast<double>(s) * 32768.0), -32768L, 32767L);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  write_file_bytes(path, out);
}

}  // namespace featgan::io
