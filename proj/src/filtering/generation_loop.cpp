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

#include "featgan/filtering/generation_loop.hpp"

#include <cstdio>
#include <sstream>

#include "featgan/io/labels.hpp"
#include "json.hpp"

namespace featgan::filtering {

std::string_view to_string(JobStatus s) {
  switch (s) {
    case JobStatus::kPending:
      return "pending";
    case JobStatus::kKept:
      return "kept";
    case JobStatus::kRejected:
      return "rejected";
    case JobStatus::kExhausted:
      return "exhausted";
    case JobStatus::kFailed:
      break;
  }
  return "failed";
}

namespace {

std::string run_recognizer(const std::string& tmpl, const std::filesystem::path& audio) {
  const auto cmd = expand_template(tmpl, {{"in_path", audio.string()}});
  auto r = run_command(cmd);
  if (r.exit_code != 0) {
    throw ExternalToolError("recognizer exited with status " + std::to_string(r.exit_code), r.err);
  }
  try {
    return final_line(r.out);
  } catch (const ExternalToolError& e) {
    throw ExternalToolError(e.what(), r.err);
  }
}

}  // namespace

SpeechBackends command_backends(const CommandTemplates& templates) {
  SpeechBackends b;
  b.synthesize = [tmpl = templates.synth](const std::string& text, const Donor& voice,
                                          const std::filesystem::path& out) {
    const auto cmd =
        expand_template(tmpl, {{"text", text}, {"voice_path", voice.path}, {"out_path", out.string()}});
    auto r = run_command(cmd);
    if (r.exit_code != 0) {
      throw ExternalToolError("synthesizer exited with status " + std::to_string(r.exit_code), r.err);
    }
    if (!std::filesystem::exists(out)) {
      throw ExternalToolError("synthesizer did not create " + out.string(), r.err);
    }
  };
  b.asr_1 = [tmpl = templates.asr_1](const std::filesystem::path& p) { return run_recognizer(tmpl, p); };
  b.asr_2 = [tmpl = templates.asr_2](const std::filesystem::path& p) { return run_recognizer(tmpl, p); };
  return b;
}

void LoopConfig::validate() const {
  if (targets.empty()) {
    throw std::invalid_argument("generation loop: no target words");
  }
  for (const auto& [word, count] : targets) {
    validate_target(word);
    if (count < 0) {
      throw std::invalid_argument("generation loop: negative count for '" + word + "'");
    }
  }
  if (max_attempts < 1) {
    throw std::invalid_argument("generation loop: max_attempts must be >= 1");
  }
}

LoopReport run_generation_loop(const LoopConfig& cfg, VoicePool& pool, const SpeechBackends& backends) {
  cfg.validate();
  Rng rng(cfg.seed);
  LoopReport report;
  for (const auto& [word, count] : cfg.targets) {
    auto& stats = report.per_word[word];
    stats.attempts_to_keep.assign(static_cast<std::size_t>(cfg.max_attempts), 0);
    for (int n = 0; n < count; ++n) {
      GenerationJob job;
      job.index = report.jobs.size();
      job.target_word = word;
      ++stats.requested;
      while (job.status == JobStatus::kPending || job.status == JobStatus::kRejected) {
        if (job.attempt >= cfg.max_attempts) {
          job.status = JobStatus::kExhausted;
          break;
        }
        const Donor* voice = nullptr;
        try {
          voice = &pool.draw(rng);
        } catch (const PoolExhausted& e) {
          job.status = JobStatus::kFailed;
          job.error = e.what();
          break;
        }
        ++job.attempt;
        ++stats.attempts;
        job.voice_donor_id = voice->utterance_id;
        char name[64];
        std::snprintf(name, sizeof name, "_%06zu_a%d.wav", job.index, job.attempt);
        const auto out = cfg.out_dir / (word + name);
        try {
          backends.synthesize(word, *voice, out);
          TranscriptPair t;
          t.asr_1 = backends.asr_1(out);
          t.asr_2 = cfg.mode == FilterMode::kDual ? backends.asr_2(out) : std::string();
          job.transcripts = t;
        } catch (const ExternalToolError& e) {
          job.status = JobStatus::kFailed;
          job.error = std::string(e.what()) + (e.stderr_text().empty() ? "" : ": " + e.stderr_text());
          break;
        }
        if (agreement_filter(word, *job.transcripts, cfg.mode) == FilterDecision::kKeep) {
          job.status = JobStatus::kKept;
          job.output_path = out.string();
        } else {
          job.status = JobStatus::kRejected;
          ++stats.rejected_attempts;
          std::error_code ec;
          std::filesystem::remove(out, ec);
        }
      }
      switch (job.status) {
        case JobStatus::kKept: {
          ++stats.kept;
          ++stats.attempts_to_keep[static_cast<std::size_t>(job.attempt - 1)];
          char id[64];
          std::snprintf(id, sizeof id, "_%06zu", job.index);
          io::SampleRecord rec;
          rec.utterance_id = "synth_" + word + id;
          rec.label = io::class_for_word(word);
          rec.domain = io::Domain::kSynthetic;
          rec.split = io::Split::kTrain;
          rec.path = job.output_path;
          rec.transcripts.emplace(job.transcripts->asr_1, job.transcripts->asr_2);
          report.kept.push_back(std::move(rec));
          break;
        }
        case JobStatus::kExhausted:
          ++stats.exhausted;
          break;
        default:
          ++stats.failed;
          break;
      }
      report.jobs.push_back(std::move(job));
    }
  }
  return report;
}

std::string report_summary(const LoopReport& report) {
  nlohmann::ordered_json root;
  int requested = 0, kept = 0, exhausted = 0, failed = 0, attempts = 0;
  nlohmann::ordered_json words = nlohmann::ordered_json::object();
  for (const auto& [word, s] : report.per_word) {
    words[word] = {{"requested", s.requested},         {"kept", s.kept},
                   {"exhausted", s.exhausted},         {"failed", s.failed},
                   {"attempts", s.attempts},           {"rejected_attempts", s.rejected_attempts},
                   {"attempts_to_keep", s.attempts_to_keep}};
    requested += s.requested;
    kept += s.kept;
    exhausted += s.exhausted;
    failed += s.failed;
    attempts += s.attempts;
  }
  root["requested"] = requested;
  root["kept"] = kept;
  root["exhausted"] = exhausted;
  root["failed"] = failed;
  root["attempts"] = attempts;
  root["words"] = std::move(words);
  return root.dump(2) + "\n";
}

std::string report_job_table(const LoopReport& report) {
  auto clean = [](std::string s) {
    for (char& c : s) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
  };
  std::ostringstream os;
  os << "index\tword\tstatus\tattempts\tdonor\ttranscript_1\ttranscript_2\terror\n";
  for (const auto& j : report.jobs) {
    os << j.index << '\t' << j.target_word << '\t' << to_string(j.status) << '\t' << j.attempt << '\t'
       << j.voice_donor_id << '\t' << (j.transcripts ? clean(j.transcripts->asr_1) : "") << '\t'
       << (j.transcripts ? clean(j.transcripts->asr_2) : "") << '\t' << clean(j.error) << '\n';
  }
  return os.str();
}

}  // namespace featgan::filtering
