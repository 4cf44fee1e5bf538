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

#ifndef FEATGAN_FILTERING_VOICE_POOL_HPP
#define FEATGAN_FILTERING_VOICE_POOL_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgan/nn/random.hpp"

namespace featgan::filtering {

struct Donor {
  std::string utterance_id;
  std::string speaker_id;
  std::string path;
};

class PoolExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Donor utterances drawn uniformly without replacement.
class VoicePool {
 public:
  explicit VoicePool(std::vector<Donor> donors);

  /// JSON Lines with utterance_id, speaker_id and path; relative paths are
  /// resolved against the file's directory.
  static VoicePool from_file(const std::filesystem::path& path);

  std::size_t size() const { return donors_.size(); }
  std::size_t remaining() const { return available_.size(); }
  bool exhausted() const { return available_.empty(); }

  /// Uniformly random unconsumed donor; marks it consumed.
  const Donor& draw(Rng& rng);

 private:
  std::vector<Donor> donors_;
  std::vector<std::size_t> available_;
};

}  // namespace featgan::filtering

#endif  // FEATGAN_FILTERING_VOICE_POOL_HPP
