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

#ifndef FEATGAN_IO_WAV_HPP
#define FEATGAN_IO_WAV_HPP

#include <filesystem>
#include <vector>

namespace featgan::io {

struct AudioClip {
  int sample_rate = 16000;
  std::vector<float> samples;  // mono, nominally in [-1, 1]
};

/// RIFF/WAVE with 16-bit PCM or 32-bit float samples. Multi-channel input
/// is rejected rather than downmixed.
AudioClip read_wav(const std::filesystem::path& path);

/// Writes 16-bit PCM; samples are clamped to [-1, 1].
void write_wav(const AudioClip& clip, const std::filesystem::path& path);

}  // namespace featgan::io

#endif  // FEATGAN_IO_WAV_HPP
