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

#ifndef FEATGAN_FILTERING_GENERATION_LOOP_HPP
#define FEATGAN_FILTERING_GENERATION_LOOP_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "featgan/filtering/process.hpp"
#include "featgan/filtering/transcript.hpp"
#include "featgan/filtering/voice_pool.hpp"
#include "featgan/io/manifest.hpp"

namespace featgan::filtering {

enum class JobStatus { kPending, kKept, kRejected, kExhausted, kFailed };

std::string_view to_string(JobStatus s);

struct GenerationJob {
  std::size_t index = 0;
  std::string target_word;
  std::string voice_donor_id;  // donor of the last attempt
  int attempt = 0;             // attempts made so far
  JobStatus status = JobStatus::kPending;
  std::optional<TranscriptPair> transcripts;  // of the last attempt
  std::string output_path;                    // kept audio, if any
  std::string error;
};

/// Synthesis and recognition, e.g. external tools or in-process stubs.
/// Implementations report failures by throwing ExternalToolError.
struct SpeechBackends {
  std::function<void(const std::string& text, const Donor& voice, const std::filesystem::path& out)>
      synthesize;
  std::function<std::string(const std::filesystem::path& audio)> asr_1;
  std::function<std::string(const std::filesystem::path& audio)> asr_2;
};

/// Shell command templates. Synthesis may use {text}, {voice_path} and
/// {out_path}; recognizers use {in_path} and print the 1-best hypothesis as
/// the last line of standard output.
struct CommandTemplates {
  std::string synth;
  std::string asr_1;
  std::string asr_2;
};

SpeechBackends command_backends(const CommandTemplates& templates);

struct LoopConfig {
  std::vector<std::pair<std::string, int>> targets;  // word -> number of samples
  int max_attempts = 8;
  FilterMode mode = FilterMode::kDual;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;

  void validate() const;
};

struct WordStats {
  int requested = 0;
  int kept = 0;
  int exhausted = 0;
  int failed = 0;
  int attempts = 0;
  int rejected_attempts = 0;
  std::vector<int> attempts_to_keep;  // [k] = jobs kept on attempt k+1
};

struct LoopReport {
  std::vector<GenerationJob> jobs;
  std::map<std::string, WordStats> per_word;
  std::vector<io::SampleRecord> kept;
};

/// For every requested sample: draw a voice, synthesize, transcribe twice,
/// filter; a rejected attempt retries with a fresh voice until
/// max_attempts. Tool failures mark the job failed and the loop continues.
LoopReport run_generation_loop(const LoopConfig& cfg, VoicePool& pool, const SpeechBackends& backends);

/// JSON summary with per-word counts and attempt histograms.
std::string report_summary(const LoopReport& report);
/// Tab-separated table with one row per job.
std::string report_job_table(const LoopReport& report);

}  // namespace featgan::filtering

#endif  // FEATGAN_FILTERING_GENERATION_LOOP_HPP
