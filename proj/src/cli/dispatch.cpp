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

#include "featgan/cli/dispatch.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "featgan/analysis/pca.hpp"
#include "featgan/analysis/probe.hpp"
#include "featgan/analysis/scatter.hpp"
#include "featgan/classifier/head.hpp"
#include "featgan/classifier/report.hpp"
#include "featgan/cli/config.hpp"
#include "featgan/cyclegan/train.hpp"
#include "featgan/filtering/generation_loop.hpp"
#include "featgan/io/fseq.hpp"
#include "featgan/io/manifest.hpp"
#include "featgan/io/pooling.hpp"
#include "featgan/io/wav.hpp"
#include "featgan/mfcc/mfcc.hpp"
#include "json.hpp"

namespace featgan::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void require_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw MissingInput(p.string());
}

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  return fs::path(p.string() + suffix);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

io::PooledSet read_pooled_checked(const fs::path& p) {
  require_file(p);
  require_file(io::sidecar_path(p.extension() == ".jsonl" ? p.parent_path() / p.stem() : p));
  return io::read_pooled(p);
}

void require_nonempty(const io::PooledSet& set, const std::string& what) {
  if (set.size() == 0) throw io::FormatError(io::FormatErrorKind::kEmpty, what + " has no records");
}

int configure_threads() {
  const char* env = std::getenv("FEATGAN_THREADS");
  int threads = 1;
  if (env != nullptr && *env != '\0') {
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), threads);
    if (ec != std::errc() || ptr != s.data() + s.size() || threads < 1) {
      throw ConfigViolation("FEATGAN_THREADS must be a positive integer, got '" + std::string(s) + "'");
    }
  }
  Eigen::setNbThreads(threads);
  return threads;
}

// ---------------------------------------------------------------- mfcc

struct MfccArgs {
  std::string in;
  std::string out_dir;
  mfcc::MfccConfig cfg;
};

void add_mfcc(CLI::App& app, MfccArgs& a) {
  auto* sub = app.add_subcommand("mfcc", "Compute MFCC sequences for every audio record of a manifest");
  sub->add_option("--in", a.in, "Manifest of audio records")->required();
  sub->add_option("--out-dir", a.out_dir, "Directory for FSEQ files and manifest.jsonl")->required();
  sub->add_option("--n-coeffs", a.cfg.n_coeffs, "Cepstral coefficients per frame");
  sub->add_option("--n-mels", a.cfg.n_mels, "Mel filters");
  sub->add_option("--frame-length", a.cfg.frame_length, "Frame length in samples");
  sub->add_option("--hop", a.cfg.hop, "Hop in samples");
  sub->add_option("--fft-size", a.cfg.fft_size, "FFT size, a power of two");
  sub->add_option("--fmin", a.cfg.fmin, "Lowest filter edge in Hz");
  sub->add_option("--fmax", a.cfg.fmax, "Highest filter edge in Hz");
  sub->add_option("--preemphasis", a.cfg.preemphasis, "Pre-emphasis coefficient");
  sub->add_option("--log-floor", a.cfg.log_floor, "Floor applied before the logarithm");
  sub->add_option("--sample-rate", a.cfg.sample_rate, "Expected sample rate in Hz");
}

std::string sanitize_id(std::string id) {
  for (char& c : id) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return id;
}

void run_mfcc(const CLI::App& sub, const MfccArgs& a, std::ostream& out) {
  a.cfg.validate();
  require_file(a.in);
  auto records = io::read_manifest(a.in);
  if (records.empty()) throw io::FormatError(io::FormatErrorKind::kEmpty, "manifest " + a.in + " has no records");
  for (const auto& r : records) require_file(io::resolve_record_path(a.in, r.path));

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::vector<io::SampleRecord> emitted;
  emitted.reserve(records.size());
  for (const auto& r : records) {
    const auto clip = io::read_wav(io::resolve_record_path(a.in, r.path));
    const std::string file = sanitize_id(r.utterance_id) + ".fseq";
    io::write_fseq(mfcc::mfcc(clip, a.cfg), dir / file);
    io::SampleRecord e = r;
    e.path = file;
    emitted.push_back(std::move(e));
  }
  io::write_manifest(emitted, dir / "manifest.jsonl");
  write_run_record(sub, dir / "run.json");
  out << "mfcc: wrote " << emitted.size() << " sequences to " << dir.string() << "\n";
}

// ---------------------------------------------------------------- pool

struct PoolArgs {
  std::string in;
  std::string out;
};

void add_pool(CLI::App& app, PoolArgs& a) {
  auto* sub = app.add_subcommand("pool", "Statistic-pool every FSEQ record of a manifest into one archive");
  sub->add_option("--in", a.in, "Manifest of FSEQ records")->required();
  sub->add_option("--out", a.out, "Pooled archive; the sidecar manifest is written next to it")->required();
}

void run_pool(const CLI::App& sub, const PoolArgs& a, std::ostream& out) {
  require_file(a.in);
  const auto records = io::read_manifest(a.in);
  for (const auto& r : records) require_file(io::resolve_record_path(a.in, r.path));
  const auto set = io::pool_manifest(records, a.in);
  io::write_pooled(set, a.out);
  write_run_record(sub, with_suffix(a.out, ".run.json"));
  out << "pool: " << set.size() << " x " << set.dims() << " -> " << a.out << "\n";
}

// ---------------------------------------------------------------- filter-loop

struct FilterLoopArgs {
  std::vector<std::string> targets;
  std::string voices;
  std::string out_dir;
  std::string synth_cmd;
  std::string asr1_cmd;
  std::string asr2_cmd;
  int max_attempts = 8;
  bool single_asr = false;
  std::uint64_t seed = 0;
};

void add_filter_loop(CLI::App& app, FilterLoopArgs& a) {
  auto* sub = app.add_subcommand("filter-loop", "Synthesize target words and keep clips both recognizers agree on");
  sub->add_option("--target", a.targets, "word:count, repeatable")->required();
  sub->add_option("--voices", a.voices, "Voice donor pool (JSON Lines)")->required();
  sub->add_option("--out-dir", a.out_dir, "Directory for audio, kept.jsonl, summary.json and jobs.tsv")
      ->required();
  sub->add_option("--synth-cmd", a.synth_cmd, "TTS command template: {text} {voice_path} {out_path}")
      ->required();
  sub->add_option("--asr1-cmd", a.asr1_cmd, "First ASR command template: {in_path}")->required();
  sub->add_option("--asr2-cmd", a.asr2_cmd, "Second ASR command template: {in_path}");
  sub->add_option("--max-attempts", a.max_attempts, "Syntheses per job before giving up");
  sub->add_flag("--single-asr", a.single_asr, "Filter on the first recognizer only");
  sub->add_option("--seed", a.seed, "Global seed");
}

std::pair<std::string, int> parse_target(const std::string& spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw ConfigViolation("target '" + spec + "' is not of the form word:count");
  }
  int count = 0;
  const std::string num = spec.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
  if (ec != std::errc() || ptr != num.data() + num.size() || count < 1) {
    throw ConfigViolation("target '" + spec + "' needs a positive count");
  }
  return {spec.substr(0, colon), count};
}

void run_filter_loop(const CLI::App& sub, const FilterLoopArgs& a, std::ostream& out) {
  filtering::LoopConfig cfg;
  for (const auto& t : a.targets) cfg.targets.push_back(parse_target(t));
  cfg.max_attempts = a.max_attempts;
  cfg.mode = a.single_asr ? filtering::FilterMode::kSingle : filtering::FilterMode::kDual;
  cfg.out_dir = a.out_dir;
  cfg.seed = derive_seed(a.seed, "filter-loop");
  if (!a.single_asr && a.asr2_cmd.empty()) {
    throw ConfigViolation("--asr2-cmd is required unless --single-asr is set");
  }
  cfg.validate();
  require_file(a.voices);
  auto pool = filtering::VoicePool::from_file(a.voices);
  const auto backends = filtering::command_backends({a.synth_cmd, a.asr1_cmd, a.asr2_cmd});

  fs::create_directories(a.out_dir);
  const auto report = filtering::run_generation_loop(cfg, pool, backends);
  const fs::path dir(a.out_dir);
  io::write_manifest(report.kept, dir / "kept.jsonl");
  write_text(dir / "summary.json", filtering::report_summary(report));
  write_text(dir / "jobs.tsv", filtering::report_job_table(report));
  write_run_record(sub, dir / "run.json");
  out << "filter-loop: kept " << report.kept.size() << " of " << report.jobs.size() << " jobs\n";
}

// ---------------------------------------------------------------- train-cyclegan

struct TrainGanArgs {
  std::string synth;
  std::string real;
  std::string out;
  bool all_classes = false;
  cyclegan::TrainConfig cfg;
};

void add_train_cyclegan(CLI::App& app, TrainGanArgs& a) {
  auto* sub = app.add_subcommand("train-cyclegan", "Train the synthetic-to-real feature CycleGAN");
  sub->add_option("--synth", a.synth, "Pooled synthetic archive (domain A)")->required();
  sub->add_option("--real", a.real, "Pooled real archive (domain B)")->required();
  sub->add_option("--out", a.out, "Model checkpoint")->required();
  sub->add_option("--epochs", a.cfg.epochs, "Training epochs");
  sub->add_option("--batch", a.cfg.batch, "Mini-batch size per domain");
  sub->add_option("--lr", a.cfg.lr, "Adam learning rate");
  sub->add_option("--lambda-cyc", a.cfg.lambda_cyc, "Cycle-consistency weight");
  sub->add_option("--lambda-id", a.cfg.lambda_id, "Identity weight");
  sub->add_option("--hidden", a.cfg.hidden, "Hidden width of every network");
  sub->add_option("--scaler-margin", a.cfg.scaler_margin, "Headroom kept inside the tanh range");
  sub->add_option("--beta1", a.cfg.beta1, "Adam beta1");
  sub->add_option("--beta2", a.cfg.beta2, "Adam beta2");
  sub->add_option("--seed", a.cfg.seed, "Global seed");
  sub->add_flag("--all-classes", a.all_classes, "Train on every class instead of the unknown class only");
}

void run_train_cyclegan(const CLI::App& sub, const TrainGanArgs& a, std::ostream& out) {
  a.cfg.validate();
  auto synth = read_pooled_checked(a.synth);
  auto real = read_pooled_checked(a.real);
  if (!a.all_classes) {
    auto unknown = [](const io::SampleRecord& r) { return r.label == io::kUnknownClass; };
    synth = io::filter_pooled(synth, unknown);
    real = io::filter_pooled(real, unknown);
  }
  const std::string scope = a.all_classes ? "" : " (unknown class)";
  require_nonempty(synth, a.synth + scope);
  require_nonempty(real, a.real + scope);
  if (synth.dims() != real.dims()) {
    throw ConfigViolation("feature dims differ: " + std::to_string(synth.dims()) + " vs " +
                          std::to_string(real.dims()));
  }

  const fs::path history_path = with_suffix(a.out, ".history.tsv");
  try {
    auto result = cyclegan::train(synth.values, real.values, a.cfg);
    cyclegan::save_model(result.model, a.out);
    write_text(history_path, cyclegan::history_table(result.history));
    const auto& last = result.history.back().gen;
    out << "train-cyclegan: " << result.history.size() << " epochs, final L_CC " << fixed(last.total)
        << " -> " << a.out << "\n";
  } catch (const cyclegan::TrainingAborted& e) {
    cyclegan::save_model(e.last_good(), a.out);
    write_text(history_path, cyclegan::history_table(e.history()));
    write_run_record(sub, with_suffix(a.out, ".run.json"));
    throw;
  }
  write_run_record(sub, with_suffix(a.out, ".run.json"));
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
  std::string model;
  std::string in;
  std::string out;
};

void add_transform(CLI::App& app, TransformArgs& a) {
  auto* sub = app.add_subcommand("transform", "Map pooled features through generator A");
  sub->add_option("--model", a.model, "CycleGAN checkpoint")->required();
  sub->add_option("--in", a.in, "Pooled archive to transform")->required();
  sub->add_option("--out", a.out, "Transformed pooled archive")->required();
}

void run_transform(const CLI::App& sub, const TransformArgs& a, std::ostream& out) {
  require_file(a.model);
  const auto model = cyclegan::load_model(a.model);
  auto set = read_pooled_checked(a.in);
  require_nonempty(set, a.in);
  set.values = model.transform(set.values);
  io::write_pooled(set, a.out);
  write_run_record(sub, with_suffix(a.out, ".run.json"));
  out << "transform: " << set.size() << " vectors -> " << a.out << "\n";
}

// ---------------------------------------------------------------- train-head

struct TrainHeadArgs {
  std::vector<std::string> train;
  std::string valid;
  std::string gan;
  std::string out;
  classifier::HeadTrainConfig cfg;
};

void add_train_head(CLI::App& app, TrainHeadArgs& a) {
  auto* sub = app.add_subcommand("train-head", "Train the linear classification head");
  sub->add_option("--train", a.train, "Pooled training archives, concatenated")->required();
  sub->add_option("--valid", a.valid, "Pooled validation archive for model selection");
  sub->add_option("--gan", a.gan, "CycleGAN checkpoint applied to synthetic training records");
  sub->add_option("--out", a.out, "Head checkpoint")->required();
  sub->add_option("--epochs", a.cfg.epochs, "Training epochs");
  sub->add_option("--lr", a.cfg.lr, "Adam learning rate");
  sub->add_option("--batch", a.cfg.batch, "Mini-batch size");
  sub->add_option("--beta1", a.cfg.beta1, "Adam beta1");
  sub->add_option("--beta2", a.cfg.beta2, "Adam beta2");
  sub->add_option("--seed", a.cfg.seed, "Global seed");
}

io::PooledSet concat_pooled(const std::vector<std::string>& paths) {
  io::PooledSet all;
  std::vector<io::PooledSet> parts;
  nn::Index rows = 0;
  for (const auto& p : paths) {
    parts.push_back(read_pooled_checked(p));
    if (!parts.empty() && parts.back().dims() != parts.front().dims()) {
      throw ConfigViolation("archive " + p + " has dim " + std::to_string(parts.back().dims()) +
                            ", expected " + std::to_string(parts.front().dims()));
    }
    rows += static_cast<nn::Index>(parts.back().size());
  }
  all.values.resize(rows, parts.empty() ? 0 : parts.front().dims());
  nn::Index at = 0;
  for (auto& part : parts) {
    all.values.middleRows(at, static_cast<nn::Index>(part.size())) = part.values;
    at += static_cast<nn::Index>(part.size());
    all.records.insert(all.records.end(), part.records.begin(), part.records.end());
  }
  return all;
}

void run_train_head(const CLI::App& sub, const TrainHeadArgs& a, std::ostream& out) {
  a.cfg.validate();
  auto train = concat_pooled(a.train);
  require_nonempty(train, "training data");
  if (!a.gan.empty()) {
    require_file(a.gan);
    const auto model = cyclegan::load_model(a.gan);
    auto synthetic = [](const io::SampleRecord& r) { return r.domain == io::Domain::kSynthetic; };
    const auto part = io::filter_pooled(train, synthetic);
    if (part.size() > 0) {
      const nn::MatrixF mapped = model.transform(part.values);
      nn::Index k = 0;
      for (std::size_t i = 0; i < train.size(); ++i) {
        if (synthetic(train.records[i])) train.values.row(static_cast<nn::Index>(i)) = mapped.row(k++);
      }
    }
  }
  classifier::LabeledSet valid;
  if (!a.valid.empty()) {
    valid = classifier::labeled_from(read_pooled_checked(a.valid));
  }
  const auto result = classifier::train_head(classifier::labeled_from(train), valid, a.cfg);
  classifier::save_head(result.head, a.out, resolved_options_json(sub));

  std::ostringstream hist;
  hist << "epoch\ttrain_loss\tvalid_accuracy\n";
  for (const auto& h : result.history) {
    hist << h.epoch << '\t' << fixed(h.train_loss) << '\t' << fixed(h.valid_accuracy) << '\n';
  }
  write_text(with_suffix(a.out, ".history.tsv"), hist.str());
  write_run_record(sub, with_suffix(a.out, ".run.json"));
  out << "train-head: best epoch " << result.best_epoch << " -> " << a.out << "\n";
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string head;
  std::string test;
  std::string out;
  std::string gan;
};

void add_eval(CLI::App& app, EvalArgs& a) {
  auto* sub = app.add_subcommand("eval", "Evaluate a head; print accuracy and write the confusion matrix");
  sub->add_option("--head", a.head, "Head checkpoint")->required();
  sub->add_option("--test", a.test, "Pooled test archive")->required();
  sub->add_option("--out", a.out, "Result JSON; the confusion table goes to <out>.confusion.tsv")
      ->required();
  sub->add_option("--gan", a.gan, "Ablation: map test vectors through this CycleGAN checkpoint first");
}

void run_eval(const CLI::App& sub, const EvalArgs& a, std::ostream& out) {
  require_file(a.head);
  const auto head = classifier::load_head(a.head);
  const auto test = read_pooled_checked(a.test);
  require_nonempty(test, a.test);
  std::optional<cyclegan::Model> gan;
  if (!a.gan.empty()) {
    require_file(a.gan);
    gan = cyclegan::load_model(a.gan);
  }
  const auto ev = classifier::evaluate(head, classifier::labeled_from(test), gan ? &*gan : nullptr);

  ordered_json j;
  j["accuracy"] = ev.accuracy;
  j["correct"] = ev.correct;
  j["total"] = ev.total;
  j["head"] = a.head;
  j["test"] = a.test;
  if (gan) j["gan"] = a.gan;
  write_text(a.out, j.dump(2) + "\n");
  write_text(with_suffix(a.out, ".confusion.tsv"), classifier::confusion_table(ev, head.classes));
  write_run_record(sub, with_suffix(a.out, ".run.json"));
  out << "accuracy " << fixed(ev.accuracy) << " (" << ev.correct << "/" << ev.total << ")\n";
}

// ---------------------------------------------------------------- pca

struct PcaArgs {
  std::vector<std::string> in;
  int k = 2;
  std::string out_prefix;
};

void add_pca(CLI::App& app, PcaArgs& a) {
  auto* sub = app.add_subcommand("pca", "Project real and synthetic pooled features onto principal axes");
  sub->add_option("--in", a.in, "Pooled real archive, then pooled synthetic archive")->required()->expected(2);
  sub->add_option("--k", a.k, "Number of components, at least 2");
  sub->add_option("--out-prefix", a.out_prefix, "Writes <prefix>.table, <prefix>.svg and <prefix>.json")
      ->required();
}

void run_pca(const CLI::App& sub, const PcaArgs& a, std::ostream& out) {
  if (a.k < 2) throw ConfigViolation("--k must be at least 2 for the scatter plot");
  const auto real = read_pooled_checked(a.in[0]);
  const auto synth = read_pooled_checked(a.in[1]);
  require_nonempty(real, a.in[0]);
  require_nonempty(synth, a.in[1]);
  if (real.dims() != synth.dims()) throw ConfigViolation("real and synthetic archives differ in dim");

  nn::MatrixD all(static_cast<nn::Index>(real.size() + synth.size()), real.dims());
  all.topRows(static_cast<nn::Index>(real.size())) = real.values.cast<double>();
  all.bottomRows(static_cast<nn::Index>(synth.size())) = synth.values.cast<double>();
  const auto model = analysis::pca_fit(all, a.k);
  const nn::MatrixD z = analysis::pca_project(model, all);

  std::vector<analysis::ScatterPoint> points;
  points.reserve(static_cast<std::size_t>(z.rows()));
  for (nn::Index i = 0; i < z.rows(); ++i) {
    const bool is_real = i < static_cast<nn::Index>(real.size());
    const auto& rec = is_real ? real.records[static_cast<std::size_t>(i)]
                              : synth.records[static_cast<std::size_t>(i) - real.size()];
    points.push_back({z(i, 0), z(i, 1), is_real ? io::Domain::kReal : io::Domain::kSynthetic,
                      std::string(io::class_name(rec.label))});
  }
  analysis::scatter_emit(points, a.out_prefix, "PCA of pooled features");

  ordered_json j;
  j["fit_on"] = "union";
  j["k"] = a.k;
  j["eigenvalues"] = model.eigenvalues;
  j["explained_ratio"] = model.explained_ratio;
  j["total_variance"] = model.total_variance;
  write_text(a.out_prefix + ".json", j.dump(2) + "\n");
  write_run_record(sub, a.out_prefix + ".run.json");
  out << "pca: explained ratio";
  for (double r : model.explained_ratio) out << ' ' << fixed(r);
  out << "\n";
}

// ---------------------------------------------------------------- probe

struct ProbeArgs {
  std::string real;
  std::string synth;
  std::string space = "raw";
  std::string out;
  analysis::ProbeConfig cfg;
};

void add_probe(CLI::App& app, ProbeArgs& a) {
  auto* sub = app.add_subcommand("probe", "Linear separability probe between real and synthetic features");
  sub->add_option("--real", a.real, "Pooled real archive")->required();
  sub->add_option("--synth", a.synth, "Pooled synthetic archive")->required();
  sub->add_option("--space", a.space, "Feature space")->check(CLI::IsMember({"raw", "pca2"}));
  sub->add_option("--train-fraction", a.cfg.train_fraction, "Stratified training share");
  sub->add_option("--epochs", a.cfg.head.epochs, "Probe training epochs");
  sub->add_option("--lr", a.cfg.head.lr, "Probe learning rate");
  sub->add_option("--batch", a.cfg.head.batch, "Probe mini-batch size");
  sub->add_option("--seed", a.cfg.seed, "Global seed");
  sub->add_option("--out", a.out, "Optional result JSON");
}

void run_probe(const CLI::App& sub, ProbeArgs a, std::ostream& out) {
  a.cfg.space = a.space == "pca2" ? analysis::ProbeSpace::kPca2 : analysis::ProbeSpace::kRaw;
  a.cfg.head.seed = a.cfg.seed;
  const auto real = read_pooled_checked(a.real);
  const auto synth = read_pooled_checked(a.synth);
  if (real.dims() != synth.dims()) throw ConfigViolation("real and synthetic archives differ in dim");
  const auto r = analysis::separability_probe(real.values, synth.values, a.cfg);
  if (!a.out.empty()) {
    ordered_json j;
    j["space"] = a.space;
    j["balanced_accuracy"] = r.balanced_accuracy;
    j["recall_real"] = r.recall_real;
    j["recall_synthetic"] = r.recall_synthetic;
    j["train_size"] = r.train_size;
    j["test_size"] = r.test_size;
    write_text(a.out, j.dump(2) + "\n");
    write_run_record(sub, with_suffix(a.out, ".run.json"));
  }
  out << "balanced_accuracy " << fixed(r.balanced_accuracy) << "\n";
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> in;
  std::string out;
};

void add_report(CLI::App& app, ReportArgs& a) {
  auto* sub = app.add_subcommand("report", "Mean and sample standard deviation over eval results");
  sub->add_option("--in", a.in, "Result JSON files written by eval")->required();
  sub->add_option("--out", a.out, "Optional copy of the printed table");
}

void run_report(const CLI::App& sub, const ReportArgs& a, std::ostream& out) {
  std::vector<double> acc;
  std::ostringstream table;
  table << "run\taccuracy\n";
  for (const auto& p : a.in) {
    require_file(p);
    std::ifstream f(p, std::ios::binary);
    ordered_json j = ordered_json::parse(f, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("accuracy") || !j["accuracy"].is_number()) {
      throw io::FormatError(io::FormatErrorKind::kMalformed, p + ": expected an eval result with 'accuracy'");
    }
    acc.push_back(j["accuracy"].get<double>());
    table << p << '\t' << fixed(acc.back()) << '\n';
  }
  if (acc.size() < 2) throw ConfigViolation("report needs at least 2 eval results");
  const auto s = classifier::multi_seed_report(acc);
  table << "mean\t" << fixed(s.mean) << '\n'
        << "std\t" << fixed(s.std) << '\n'
        << "runs\t" << s.runs << '\n'
        << "summary\t" << classifier::format_summary(s) << '\n';
  out << table.str();
  if (!a.out.empty()) {
    write_text(a.out, table.str());
    write_run_record(sub, with_suffix(a.out, ".run.json"));
  }
}

// ---------------------------------------------------------------- driver

/// Moves `--config <path>` given after the subcommand to the front, where
/// the root app expects it.
std::vector<std::string> hoist_config(const std::vector<std::string>& args) {
  std::vector<std::string> front;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      front.push_back(args[i]);
      front.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      front.push_back(args[i]);
    } else {
      rest.push_back(args[i]);
    }
  }
  front.insert(front.end(), rest.begin(), rest.end());
  return front;
}

int fail(std::ostream& err, int code, const std::string& category, const std::string& message) {
  err << "featgan: error: " << category << ": " << one_line(message) << "\n";
  return code;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"featgan: synthetic speech feature pipeline", "featgan"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("featgan ") + FEATGAN_VERSION);
  app.set_config("--config", "", "JSON config with one object per subcommand");
  app.config_formatter(std::make_shared<JsonConfig>());
  app.allow_config_extras(CLI::config_extras_mode::error);

  MfccArgs mfcc_args;
  PoolArgs pool_args;
  FilterLoopArgs loop_args;
  TrainGanArgs gan_args;
  TransformArgs transform_args;
  TrainHeadArgs head_args;
  EvalArgs eval_args;
  PcaArgs pca_args;
  ProbeArgs probe_args;
  ReportArgs report_args;
  add_mfcc(app, mfcc_args);
  add_pool(app, pool_args);
  add_filter_loop(app, loop_args);
  add_train_cyclegan(app, gan_args);
  add_transform(app, transform_args);
  add_train_head(app, head_args);
  add_eval(app, eval_args);
  add_pca(app, pca_args);
  add_probe(app, probe_args);
  add_report(app, report_args);

  const auto args = hoist_config(raw_args);
  std::vector<const char*> argv{"featgan"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    return fail(err, kExitMissing, "missing-file", e.what());
  } catch (const CLI::ConfigError& e) {
    std::string msg = e.what();
    const std::string ini = "INI was not able to parse ";
    if (msg.rfind(ini, 0) == 0) msg = "unknown key " + msg.substr(ini.size());
    return fail(err, kExitConfig, "config", msg);
  } catch (const CLI::ParseError& e) {
    return fail(err, kExitUsage, "usage", e.what());
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    configure_threads();
    if (name == "mfcc") run_mfcc(*sub, mfcc_args, out);
    else if (name == "pool") run_pool(*sub, pool_args, out);
    else if (name == "filter-loop") run_filter_loop(*sub, loop_args, out);
    else if (name == "train-cyclegan") run_train_cyclegan(*sub, gan_args, out);
    else if (name == "transform") run_transform(*sub, transform_args, out);
    else if (name == "train-head") run_train_head(*sub, head_args, out);
    else if (name == "eval") run_eval(*sub, eval_args, out);
    else if (name == "pca") run_pca(*sub, pca_args, out);
    else if (name == "probe") run_probe(*sub, probe_args, out);
    else if (name == "report") run_report(*sub, report_args, out);
  } catch (const MissingInput& e) {
    return fail(err, kExitMissing, "missing-file", e.path());
  } catch (const io::FormatError& e) {
    if (e.kind() == io::FormatErrorKind::kEmpty) return fail(err, kExitConfig, "empty-input", e.detail());
    return fail(err, kExitRuntime, "format", e.what());
  } catch (const filtering::ExternalToolError& e) {
    std::string msg = e.what();
    if (!e.stderr_text().empty()) msg += " | stderr: " + e.stderr_text();
    return fail(err, kExitRuntime, "external-tool", msg);
  } catch (const cyclegan::TrainingAborted& e) {
    return fail(err, kExitRuntime, "training-aborted", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(err, kExitConfig, "config", e.what());
  } catch (const std::exception& e) {
    return fail(err, kExitRuntime, "runtime", e.what());
  }
  return kExitOk;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace featgan::cli
