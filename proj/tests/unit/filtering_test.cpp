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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "featgan/filtering/generation_loop.hpp"
#include "support/test_support.hpp"

namespace featgan::filtering {
namespace {

using testing::TempDir;

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_transcript("Yes."), "yes");
  EXPECT_EQ(normalize_transcript("  GO  go "), "go go");
  EXPECT_EQ(normalize_transcript("G\xC3\xB6ttingen"), "gttingen");
  EXPECT_EQ(normalize_transcript("don't\tstop"), "don't stop");
  EXPECT_EQ(normalize_transcript(""), "");
}

// Golden table: case folding, punctuation, disagreement and multi-token
// hypotheses.
TEST(AgreementFilter, GoldenTable) {
  const auto rows = testing::filter_golden_rows();
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& row : rows) {
    const auto expected = row.keep ? FilterDecision::kKeep : FilterDecision::kReject;
    EXPECT_EQ(agreement_filter(row.target, {row.asr_1, row.asr_2}), expected)
        << row.target << " | " << row.asr_1 << " | " << row.asr_2;
  }
}

TEST(AgreementFilter, AgreementAloneIsNotEnough) {
  Rng rng(4);
  const char* words[] = {"yes", "no", "Yes", "NO.", "maybe", "go go", ""};
  for (int i = 0; i < 200; ++i) {
    const std::string x = words[rng.below(7)];
    const std::string t = normalize_transcript(words[rng.below(6)]);
    if (t.find(' ') != std::string::npos || t.empty()) continue;
    const bool keep = agreement_filter(t, {x, x}) == FilterDecision::kKeep;
    EXPECT_EQ(keep, normalize_transcript(x) == t) << t << " / " << x;
  }
}

TEST(AgreementFilter, SymmetricInTranscripts) {
  for (const auto& row : testing::filter_golden_rows()) {
    EXPECT_EQ(agreement_filter(row.target, {row.asr_1, row.asr_2}),
              agreement_filter(row.target, {row.asr_2, row.asr_1}));
  }
}

TEST(AgreementFilter, SingleModeIgnoresSecondTranscript) {
  EXPECT_EQ(agreement_filter("yes", {"Yes", "nope"}, FilterMode::kSingle), FilterDecision::kKeep);
  EXPECT_EQ(agreement_filter("yes", {"nope", "yes"}, FilterMode::kSingle), FilterDecision::kReject);
}

TEST(AgreementFilter, MultiWordTargetRejectedAtValidation) {
  EXPECT_THROW(validate_target("go go"), std::invalid_argument);
  EXPECT_THROW(validate_target("Yes"), std::invalid_argument);
  EXPECT_THROW(validate_target(""), std::invalid_argument);
  EXPECT_NO_THROW(validate_target("yes"));
  LoopConfig cfg;
  cfg.targets = {{"right now", 1}};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

std::vector<Donor> donors(std::size_t n) {
  std::vector<Donor> d;
  for (std::size_t i = 0; i < n; ++i) {
    d.push_back({"d" + std::to_string(i), "spk" + std::to_string(i % 7), "voices/d" + std::to_string(i) + ".wav"});
  }
  return d;
}

TEST(VoicePool, ExhaustiveDrawIsPermutation) {
  VoicePool pool(donors(3));
  Rng rng(1);
  std::set<std::string> seen;
  for (int i = 0; i < 3; ++i) seen.insert(pool.draw(rng).utterance_id);
  EXPECT_EQ(seen, (std::set<std::string>{"d0", "d1", "d2"}));
  EXPECT_TRUE(pool.exhausted());
  EXPECT_THROW(pool.draw(rng), PoolExhausted);
}

TEST(VoicePool, FixedSeedIsDeterministic) {
  auto sequence = [] {
    VoicePool pool(donors(50));
    Rng rng(99);
    std::vector<std::string> ids;
    for (int i = 0; i < 50; ++i) ids.push_back(pool.draw(rng).utterance_id);
    return ids;
  };
  EXPECT_EQ(sequence(), sequence());
}

TEST(VoicePool, FirstDrawIsUniform) {
  const int trials = 10000;
  std::vector<int> counts(4, 0);
  Rng rng(2026);
  for (int t = 0; t < trials; ++t) {
    VoicePool pool(donors(4));
    ++counts[static_cast<std::size_t>(std::stoi(pool.draw(rng).utterance_id.substr(1)))];
  }
  const double expected = trials / 4.0;
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (int c : counts) EXPECT_LT(std::abs(c - expected), 3 * sigma) << c;
}

TEST(VoicePool, RejectsDuplicateIds) {
  auto d = donors(3);
  d[2].utterance_id = "d0";
  EXPECT_THROW(VoicePool{d}, std::invalid_argument);
}

TEST(VoicePool, ReadsJsonLinesAndResolvesPaths) {
  TempDir dir;
  {
    std::ofstream f(dir / "voices.jsonl");
    f << R"({"utterance_id":"a","speaker_id":"s1","path":"clips/a.wav"})" << "\n"
      << R"({"utterance_id":"b","speaker_id":"s2","path":"/abs/b.wav"})" << "\n";
  }
  auto pool = VoicePool::from_file(dir / "voices.jsonl");
  EXPECT_EQ(pool.size(), 2u);
  Rng rng(0);
  std::set<std::string> paths{pool.draw(rng).path, pool.draw(rng).path};
  EXPECT_TRUE(paths.count((dir / "clips/a.wav").string()));
  EXPECT_TRUE(paths.count("/abs/b.wav"));
}

SpeechBackends echo_backends() {
  SpeechBackends b;
  b.synthesize = [](const std::string& text, const Donor&, const std::filesystem::path& out) {
    std::ofstream(out) << text;
  };
  auto read_back = [](const std::filesystem::path& p) { return testing::read_text(p); };
  b.asr_1 = read_back;
  b.asr_2 = read_back;
  return b;
}

TEST(GenerationLoop, EchoStubsKeepEveryJobOnFirstAttempt) {
  TempDir dir;
  VoicePool pool(donors(20));
  LoopConfig cfg;
  cfg.targets = {{"yes", 3}, {"no", 2}, {"house", 1}};
  cfg.out_dir = dir.path();
  const auto report = run_generation_loop(cfg, pool, echo_backends());
  ASSERT_EQ(report.kept.size(), 6u);
  for (const auto& job : report.jobs) {
    EXPECT_EQ(job.status, JobStatus::kKept);
    EXPECT_EQ(job.attempt, 1);
    EXPECT_TRUE(std::filesystem::exists(job.output_path));
  }
  for (const auto& r : report.kept) {
    EXPECT_EQ(r.domain, io::Domain::kSynthetic);
    EXPECT_TRUE(r.transcripts.has_value());
  }
  EXPECT_EQ(report.kept.back().label, io::kUnknownClass);
  EXPECT_EQ(report.kept.front().label, *io::class_index("yes"));
}

TEST(GenerationLoop, OneJobPerWordGivesTwoSyntheticRecords) {
  TempDir dir;
  VoicePool pool(donors(5));
  LoopConfig cfg;
  cfg.targets = {{"yes", 1}, {"no", 1}};
  cfg.out_dir = dir.path();
  const auto report = run_generation_loop(cfg, pool, echo_backends());
  ASSERT_EQ(report.kept.size(), 2u);
  for (const auto& r : report.kept) EXPECT_EQ(r.domain, io::Domain::kSynthetic);
}

// ASR pair that agrees on the target with probability one half per attempt.
SpeechBackends coin_backends(Rng& coin) {
  SpeechBackends b;
  b.synthesize = [](const std::string&, const Donor&, const std::filesystem::path&) {};
  b.asr_1 = [](const std::filesystem::path& p) { return p.filename().string().substr(0, p.filename().string().find('_')); };
  b.asr_2 = [&coin](const std::filesystem::path& p) {
    const std::string word = p.filename().string().substr(0, p.filename().string().find('_'));
    return coin.below(2) == 0 ? word : word + "s";
  };
  return b;
}

double exhaustion_rate(int max_attempts, int jobs, std::uint64_t seed) {
  TempDir dir;
  VoicePool pool(donors(static_cast<std::size_t>(jobs * max_attempts)));
  Rng coin(seed);
  LoopConfig cfg;
  cfg.targets = {{"yes", jobs}};
  cfg.max_attempts = max_attempts;
  cfg.out_dir = dir.path();
  cfg.seed = seed;
  const auto report = run_generation_loop(cfg, pool, coin_backends(coin));
  const auto& s = report.per_word.at("yes");
  EXPECT_EQ(s.kept + s.exhausted + s.failed, s.requested);
  EXPECT_EQ(s.failed, 0);
  return static_cast<double>(s.exhausted) / jobs;
}

TEST(GenerationLoop, ExhaustionRateMatchesBernoulliRetryModel) {
  const int jobs = 2000;
  for (int attempts : {4, 8}) {
    const double p = std::pow(0.5, attempts);
    const double sigma = std::sqrt(p * (1 - p) / jobs);
    EXPECT_NEAR(exhaustion_rate(attempts, jobs, 17 + attempts), p, 3 * sigma) << attempts;
  }
}

TEST(GenerationLoop, ReportCountsAreConsistentAndVoicesUnique) {
  TempDir dir;
  VoicePool pool(donors(400));
  Rng coin(3);
  LoopConfig cfg;
  cfg.targets = {{"yes", 30}, {"stop", 20}};
  cfg.max_attempts = 3;
  cfg.out_dir = dir.path();
  const auto report = run_generation_loop(cfg, pool, coin_backends(coin));
  std::set<std::string> voices;
  int attempts = 0;
  for (const auto& [word, s] : report.per_word) {
    EXPECT_EQ(s.kept + s.exhausted + s.failed, s.requested);
    EXPECT_GE(s.attempts, s.kept);
    attempts += s.attempts;
  }
  for (const auto& job : report.jobs) {
    EXPECT_LE(job.attempt, cfg.max_attempts);
    if (job.status == JobStatus::kKept) {
      EXPECT_TRUE(voices.insert(job.voice_donor_id).second);
    }
  }
  EXPECT_EQ(static_cast<std::size_t>(attempts), 400 - pool.remaining());
}

TEST(GenerationLoop, ToolFailureMarksJobFailedAndContinues) {
  TempDir dir;
  VoicePool pool(donors(10));
  auto b = echo_backends();
  int calls = 0;
  b.synthesize = [&calls](const std::string& text, const Donor&, const std::filesystem::path& out) {
    if (++calls == 1) throw ExternalToolError("synth exited with status 3", "model missing");
    std::ofstream(out) << text;
  };
  LoopConfig cfg;
  cfg.targets = {{"yes", 2}};
  cfg.out_dir = dir.path();
  const auto report = run_generation_loop(cfg, pool, b);
  EXPECT_EQ(report.jobs[0].status, JobStatus::kFailed);
  EXPECT_NE(report.jobs[0].error.find("model missing"), std::string::npos);
  EXPECT_EQ(report.jobs[1].status, JobStatus::kKept);
  EXPECT_EQ(report.per_word.at("yes").failed, 1);
}

TEST(GenerationLoop, PoolExhaustionIsReportedNotFatal) {
  TempDir dir;
  VoicePool pool(donors(1));
  LoopConfig cfg;
  cfg.targets = {{"yes", 3}};
  cfg.out_dir = dir.path();
  const auto report = run_generation_loop(cfg, pool, echo_backends());
  EXPECT_EQ(report.per_word.at("yes").kept, 1);
  EXPECT_EQ(report.per_word.at("yes").failed, 2);
}

TEST(GenerationLoop, SameSeedSameReport) {
  auto run = [] {
    TempDir dir;
    VoicePool pool(donors(100));
    Rng coin(5);
    LoopConfig cfg;
    cfg.targets = {{"go", 20}};
    cfg.out_dir = dir.path();
    cfg.seed = 8;
    auto report = run_generation_loop(cfg, pool, coin_backends(coin));
    std::string table = report_job_table(report);
    return table;
  };
  EXPECT_EQ(run(), run());
}

// ------------------------------------------------------------------ external commands

TEST(Command, TemplateQuotesPlaceholders) {
  EXPECT_EQ(expand_template("tts --text {text} --out {out_path}", {{"text", "it's"}, {"out_path", "/tmp/a b.wav"}}),
            "tts --text 'it'\\''s' --out '/tmp/a b.wav'");
  EXPECT_THROW(expand_template("x {nope}", {}), std::invalid_argument);
}

TEST(Command, FinalLineProtocol) {
  EXPECT_EQ(final_line("loading model\nwarming up\nyes\n"), "yes");
  EXPECT_EQ(final_line("yes"), "yes");
  EXPECT_THROW(final_line(""), ExternalToolError);
}

TEST(Command, RunCapturesOutputAndStatus) {
  const auto ok = run_command("echo hello; echo oops 1>&2");
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.out, "hello\n");
  EXPECT_EQ(ok.err, "oops\n");
  EXPECT_EQ(run_command("exit 7").exit_code, 7);
}

TEST(Command, ShellScriptBackendsEndToEnd) {
  TempDir dir;
  const auto synth = dir / "synth.sh";
  const auto asr = dir / "asr.sh";
  {
    std::ofstream(synth) << "#!/bin/sh\n# args: text voice out\nprintf '%s' \"$1\" > \"$3\"\n";
    std::ofstream(asr) << "#!/bin/sh\necho 'decoding...'\ntr '[:lower:]' '[:upper:]' < \"$1\"; echo .\n";
  }
  std::filesystem::permissions(synth, std::filesystem::perms::owner_all);
  std::filesystem::permissions(asr, std::filesystem::perms::owner_all);
  const auto backends = command_backends({synth.string() + " {text} {voice_path} {out_path}",
                                          asr.string() + " {in_path}", asr.string() + " {in_path}"});
  VoicePool pool(donors(4));
  LoopConfig cfg;
  cfg.targets = {{"yes", 1}, {"no", 1}};
  cfg.out_dir = dir / "out";
  std::filesystem::create_directories(cfg.out_dir);
  const auto report = run_generation_loop(cfg, pool, backends);
  ASSERT_EQ(report.kept.size(), 2u);
  EXPECT_EQ(report.kept[0].transcripts->first, "YES.");

  const auto failing = command_backends({"sh -c 'echo broken >&2; exit 3' {text} {voice_path} {out_path}",
                                         asr.string() + " {in_path}", asr.string() + " {in_path}"});
  VoicePool pool2(donors(2));
  cfg.targets = {{"yes", 1}};
  const auto bad = run_generation_loop(cfg, pool2, failing);
  EXPECT_EQ(bad.jobs[0].status, JobStatus::kFailed);
  EXPECT_NE(bad.jobs[0].error.find("broken"), std::string::npos) << bad.jobs[0].error;
}

}  // namespace
}  // namespace featgan::filtering
