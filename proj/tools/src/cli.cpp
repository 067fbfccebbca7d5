// Copyright (c) 2026 The voxsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "voxsel/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "report_io.hpp"
#include "voxsel/audio.hpp"
#include "voxsel/embedding.hpp"
#include "voxsel/losses.hpp"
#include "voxsel/metrics.hpp"
#include "voxsel/parallel.hpp"
#include "voxsel/pqmf.hpp"
#include "voxsel/selection.hpp"

namespace voxsel::cli {
namespace {

namespace fs = std::filesystem;

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

LogLevel g_log_level = LogLevel::kInfo;

void log(LogLevel level, const std::string& msg) {
  if (level > g_log_level) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::cerr << "[voxsel][" << kNames[static_cast<int>(level)] << "] " << msg << '\n';
}

LogLevel parse_log_level(const std::string& name) {
  if (name == "error") return LogLevel::kError;
  if (name == "warn") return LogLevel::kWarn;
  if (name == "info") return LogLevel::kInfo;
  if (name == "debug") return LogLevel::kDebug;
  throw CLI::ValidationError("--log-level", "expected one of error, warn, info, debug");
}

struct GlobalOptions {
  unsigned threads = 0;
  std::string log_level = "info";
  std::uint64_t seed = 42;
};

struct SelectOptions {
  std::string pool;
  std::string plda;
  std::string target;
  std::string criterion = "dc3";
  std::size_t k = 85;
  double alpha = 0.1;
  double sigmoid_c = 0.5;
  double epsilon = 1e-6;
  std::string out;
  std::string list;  // derived from out when empty
  std::string reference;
  std::string exclude_speakers;
};

struct StatsOptions {
  std::string report;
  std::string reference;
  std::string out;
};

struct HistOptions {
  std::string report;
  std::size_t bins = 20;
  std::string group_by = "none";
  std::string out;
};

struct EvalOptions {
  std::string pairs;
  std::string plda;
  std::string pool;
  std::string out;
  std::size_t fft_size = 2048;
  std::size_t hop = 220;
  std::size_t mcd_order = 24;
  double frame_period_ms = 5.0;
  double f0_min = 70.0;
  double f0_max = 400.0;
};

struct PqmfOptions {
  std::size_t bands = 5;
  std::size_t taps = 62;
  double beta = 9.0;
  std::string roundtrip;  // wav path; seeded white noise when empty
  std::string report;
};

struct StftLossOptions {
  std::string a;
  std::string b;
  std::string preset = "fullband";
  std::string out;
};

struct PoolInfoOptions {
  std::string pool;
};

std::set<std::string> read_speaker_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open speaker list: " + path.string());
  std::set<std::string> speakers;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) speakers.insert(line);
  }
  return speakers;
}

fs::path default_list_path(const fs::path& out) {
  fs::path p = out;
  p.replace_extension(".list.txt");
  return p;
}

void run_select(const GlobalOptions& global, const SelectOptions& opt) {
  EmbeddingPool pool = EmbeddingPool::load(opt.pool, pool_format_from_path(opt.pool));
  log(LogLevel::kInfo, "pool: " + std::to_string(pool.size()) + " records, " +
                           std::to_string(pool.num_speakers()) + " speakers, dim " +
                           std::to_string(pool.dimension()));
  PldaModel model = load_plda(opt.plda);
  EmbeddingPool target_pool =
      EmbeddingPool::load(opt.target, pool_format_from_path(opt.target));
  Vec target = target_embedding(target_pool.records());

  SelectionConfig cfg;
  cfg.criterion = criterion_from_string(opt.criterion);
  cfg.k = opt.k;
  cfg.alpha = opt.alpha;
  cfg.sigmoid_c = opt.sigmoid_c;
  cfg.epsilon = opt.epsilon;

  std::set<std::string> excluded;
  if (!opt.exclude_speakers.empty()) excluded = read_speaker_list(opt.exclude_speakers);

  SelectionReport report = rank_pool(pool, model, target, cfg, excluded, global.threads);
  if (report.ranked.size() < cfg.k)
    log(LogLevel::kWarn, "requested k=" + std::to_string(cfg.k) + " but only " +
                             std::to_string(report.ranked.size()) +
                             " candidates are available; selecting all of them");

  if (!opt.reference.empty()) {
    std::vector<ScoredUtterance> ref = read_report_utterances(opt.reference, "selected");
    std::span<const ScoredUtterance> ref_span(ref);
    report.stats = selection_stats(report.selected, &ref_span);
  }

  Json echo;
  echo["subcommand"] = "select";
  echo["pool"] = opt.pool;
  echo["plda"] = opt.plda;
  echo["target"] = opt.target;
  echo["criterion"] = to_string(cfg.criterion);
  echo["k"] = cfg.k;
  echo["alpha"] = cfg.alpha;
  echo["sigmoid_c"] = cfg.sigmoid_c;
  echo["epsilon"] = cfg.epsilon;
  echo["exclude_speakers"] =
      opt.exclude_speakers.empty() ? Json(nullptr) : Json(opt.exclude_speakers);
  echo["reference"] = opt.reference.empty() ? Json(nullptr) : Json(opt.reference);
  echo["seed"] = global.seed;

  write_file_atomic(opt.out, selection_report_to_json(report, std::move(echo)).dump(2) + "\n");

  // Adaptation list: the selected utterances followed by the target
  // utterances, one "<speaker>\t<utterance>" per line.
  fs::path list_path = opt.list.empty() ? default_list_path(opt.out) : fs::path(opt.list);
  std::ostringstream list;
  for (const auto& s : report.selected) list << s.speaker_id << '\t' << s.utterance_id << '\n';
  for (const auto& rec : target_pool.records())
    list << rec.speaker_id << '\t' << rec.utterance_id << '\n';
  write_file_atomic(list_path, list.str());

  log(LogLevel::kInfo, "selected " + std::to_string(report.selected.size()) + " of " +
                           std::to_string(report.ranked.size()) +
                           " candidates; threshold score " +
                           std::to_string(report.threshold_score));
  log(LogLevel::kInfo, "wrote " + opt.out + " and " + list_path.string());
}

void run_stats(const StatsOptions& opt) {
  std::vector<ScoredUtterance> selected = read_report_utterances(opt.report, "selected");
  SelectionStats stats;
  if (!opt.reference.empty()) {
    std::vector<ScoredUtterance> ref = read_report_utterances(opt.reference, "selected");
    std::span<const ScoredUtterance> ref_span(ref);
    stats = selection_stats(selected, &ref_span);
  } else {
    stats = selection_stats(selected);
  }

  std::cout << "num_selected: " << selected.size() << '\n'
            << "num_speakers: " << stats.num_speakers << '\n'
            << "num_suspected: " << stats.num_suspected << '\n';
  if (stats.utterance_overlap_pct)
    std::cout << "utterance_overlap_pct: " << *stats.utterance_overlap_pct << '\n';
  else
    std::cout << "utterance_overlap_pct: n/a\n";
  if (stats.speaker_overlap_pct)
    std::cout << "speaker_overlap_pct: " << *stats.speaker_overlap_pct << '\n';
  else
    std::cout << "speaker_overlap_pct: n/a\n";

  if (!opt.out.empty()) {
    Json echo;
    echo["subcommand"] = "stats";
    echo["report"] = opt.report;
    echo["reference"] = opt.reference.empty() ? Json(nullptr) : Json(opt.reference);
    Json j;
    j["format_version"] = kStatsFormatVersion;
    j["config"] = std::move(echo);
    j["num_selected"] = selected.size();
    j["stats"] = selection_stats_to_json(stats);
    write_file_atomic(opt.out, j.dump(2) + "\n");
  }
}

void run_hist(const HistOptions& opt) {
  std::vector<ScoredUtterance> ranked = read_report_utterances(opt.report, "ranked");
  HistogramGroupBy group_by = HistogramGroupBy::kNone;
  if (opt.group_by == "tag" || opt.group_by == "speaker_gender_tag")
    group_by = HistogramGroupBy::kSpeakerGenderTag;
  else if (opt.group_by != "none")
    throw ValidationError("unknown --group-by value: " + opt.group_by);

  HistogramTable table = score_histogram(ranked, opt.bins, group_by);

  Json echo;
  echo["subcommand"] = "hist";
  echo["report"] = opt.report;
  echo["bins"] = opt.bins;
  echo["group_by"] = opt.group_by;

  std::ostringstream csv;
  csv << "# format_version: " << kHistFormatVersion << '\n';
  csv << "# config: " << echo.dump() << '\n';
  csv << table.to_csv();
  write_file_atomic(opt.out, csv.str());
  log(LogLevel::kInfo, "wrote " + opt.out);
}

Vec lookup_embedding(const EmbeddingPool* pool, const std::string& id,
                     const std::string& line_ctx) {
  if (pool == nullptr)
    throw ValidationError("pair references embedding id \"" + id +
                          "\" but no --pool was given (" + line_ctx + ")");
  auto sep = id.find(':');
  if (sep == std::string::npos)
    throw ValidationError("embedding id must be speaker:utterance, got \"" + id + "\" (" +
                          line_ctx + ")");
  std::string speaker = id.substr(0, sep);
  std::string utterance = id.substr(sep + 1);
  for (auto idx : pool->utterances_of(speaker)) {
    const auto& rec = pool->record(idx);
    if (rec.utterance_id == utterance)
      return Vec(rec.embedding.begin(), rec.embedding.end());
  }
  throw ValidationError("embedding id not found in pool: " + id + " (" + line_ctx + ")");
}

std::vector<PairInput> read_pairs_tsv(const fs::path& path, const EmbeddingPool* pool) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open pairs file: " + path.string());

  std::vector<PairInput> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string ctx = path.filename().string() + ":" + std::to_string(line_no);

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 2 && fields.size() != 4)
      throw ValidationError("expected 2 or 4 tab-separated fields (" + ctx + ")");

    PairInput pair;
    pair.id = fields[0] + "|" + fields[1];
    if (fields[0] != "-") pair.ref_audio = read_wav(fields[0]);
    if (fields[1] != "-") pair.test_audio = read_wav(fields[1]);
    if (fields.size() == 4) {
      pair.id += "|" + fields[2] + "|" + fields[3];
      pair.ref_embedding = lookup_embedding(pool, fields[2], ctx);
      pair.test_embedding = lookup_embedding(pool, fields[3], ctx);
    }
    if ((pair.ref_audio.has_value()) != (pair.test_audio.has_value()))
      throw ValidationError("audio must be present for both sides or neither (" + ctx + ")");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

void run_eval(const EvalOptions& opt) {
  std::optional<PldaModel> model;
  if (!opt.plda.empty()) model = load_plda(opt.plda);
  std::optional<EmbeddingPool> pool;
  if (!opt.pool.empty())
    pool = EmbeddingPool::load(opt.pool, pool_format_from_path(opt.pool));

  std::vector<PairInput> pairs = read_pairs_tsv(opt.pairs, pool ? &*pool : nullptr);
  if (pairs.empty()) throw ValidationError("pairs file is empty: " + opt.pairs);

  MetricsConfig cfg;
  cfg.lsd_stft = StftConfig{opt.fft_size, opt.hop, opt.fft_size};
  cfg.mcd_order = opt.mcd_order;
  cfg.f0 = F0Config{opt.frame_period_ms, opt.f0_min, opt.f0_max};

  EvalReport report = evaluate_pair_set(pairs, model ? &*model : nullptr, cfg);

  Json echo;
  echo["subcommand"] = "eval";
  echo["pairs"] = opt.pairs;
  echo["plda"] = opt.plda.empty() ? Json(nullptr) : Json(opt.plda);
  echo["pool"] = opt.pool.empty() ? Json(nullptr) : Json(opt.pool);
  echo["fft_size"] = opt.fft_size;
  echo["hop"] = opt.hop;
  echo["mcd_order"] = opt.mcd_order;
  echo["frame_period_ms"] = opt.frame_period_ms;
  echo["f0_min"] = opt.f0_min;
  echo["f0_max"] = opt.f0_max;

  write_file_atomic(opt.out, eval_report_to_json(report, std::move(echo)).dump(2) + "\n");
  log(LogLevel::kInfo, "evaluated " + std::to_string(pairs.size()) + " pairs; wrote " + opt.out);
}

void run_pqmf(const GlobalOptions& global, const PqmfOptions& opt) {
  PqmfBank bank = design_pqmf(opt.bands, opt.taps, opt.beta);
  log(LogLevel::kInfo, "designed " + std::to_string(opt.bands) + "-band bank, cutoff " +
                           std::to_string(bank.cutoff) + " cycles/sample");

  AudioBuffer audio;
  if (!opt.roundtrip.empty()) {
    audio = read_wav(opt.roundtrip);
  } else {
    // One second of seeded white noise at 44.1 kHz.
    audio.sample_rate_hz = 44100;
    audio.samples.resize(44100);
    std::mt19937_64 rng(global.seed);
    std::normal_distribution<double> dist(0.0, 0.25);
    for (double& s : audio.samples) s = dist(rng);
  }
  double snr = pqmf_round_trip_snr_db(bank, audio);

  Json echo;
  echo["subcommand"] = "pqmf";
  echo["bands"] = opt.bands;
  echo["taps"] = opt.taps;
  echo["beta"] = opt.beta;
  echo["roundtrip"] = opt.roundtrip.empty() ? Json(nullptr) : Json(opt.roundtrip);
  echo["seed"] = global.seed;

  Json j;
  j["format_version"] = kPqmfFormatVersion;
  j["config"] = std::move(echo);
  j["cutoff"] = bank.cutoff;
  j["round_trip_delay"] = bank.round_trip_delay();
  j["snr_db"] = snr;
  write_file_atomic(opt.report, j.dump(2) + "\n");
  log(LogLevel::kInfo, "round-trip snr " + std::to_string(snr) + " dB; wrote " + opt.report);
}

void run_stftloss(const StftLossOptions& opt) {
  AudioBuffer a = read_wav(opt.a);
  AudioBuffer b = read_wav(opt.b);

  StftLossConfig cfg;
  if (opt.preset == "fullband")
    cfg = fullband_stft_preset();
  else if (opt.preset == "subband")
    cfg = subband_stft_preset();
  else
    throw ValidationError("unknown preset: " + opt.preset + " (expected fullband or subband)");

  Json per = Json::array();
  double total = 0.0;
  for (const auto& res : cfg.resolutions) {
    StftLossTerms terms = stft_loss_single(a, b, res);
    Json item;
    item["fft_size"] = res.fft_size;
    item["hop"] = res.hop;
    item["window_length"] = res.window_length;
    item["spectral_convergence"] = terms.spectral_convergence;
    item["log_magnitude"] = terms.log_magnitude;
    per.push_back(std::move(item));
    total += terms.total();
  }

  Json echo;
  echo["subcommand"] = "stftloss";
  echo["a"] = opt.a;
  echo["b"] = opt.b;
  echo["preset"] = opt.preset;

  Json j;
  j["format_version"] = kStftLossFormatVersion;
  j["config"] = std::move(echo);
  j["per_resolution"] = std::move(per);
  j["loss"] = total / static_cast<double>(cfg.resolutions.size());
  write_file_atomic(opt.out, j.dump(2) + "\n");
  log(LogLevel::kInfo, "wrote " + opt.out);
}

void run_pool_info(const PoolInfoOptions& opt) {
  EmbeddingPool pool = EmbeddingPool::load(opt.pool, pool_format_from_path(opt.pool));
  std::cout << "dimension: " << pool.dimension() << '\n'
            << "records: " << pool.size() << '\n'
            << "speakers: " << pool.num_speakers() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Corpus selection and audio evaluation toolkit"};
  app.name("voxsel");
  app.set_config("--config", "", "Read options from a TOML config file");
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--threads", global.threads,
                 "Worker threads (0 = available parallelism)")
      ->capture_default_str();
  app.add_option("--log-level", global.log_level, "error, warn, info, or debug")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "Seed for synthetic fixture generation")
      ->capture_default_str();

  SelectOptions select_opt;
  CLI::App* select = app.add_subcommand("select", "Rank a candidate pool and select top-k");
  select->fallthrough();
  select->add_option("--pool", select_opt.pool, "Candidate pool (.xvb or .jsonl)")->required();
  select->add_option("--plda", select_opt.plda, "PLDA model json")->required();
  select->add_option("--target", select_opt.target, "Target utterance pool")->required();
  select->add_option("--criterion", select_opt.criterion, "dc1, dc2, or dc3")
      ->capture_default_str();
  select->add_option("--k", select_opt.k, "Number of utterances to select")
      ->capture_default_str();
  select->add_option("--alpha", select_opt.alpha, "Regularizer weight")->capture_default_str();
  select->add_option("--sigmoid-c", select_opt.sigmoid_c, "Temperature constant")
      ->capture_default_str();
  select->add_option("--epsilon", select_opt.epsilon, "Divergence floor")
      ->capture_default_str();
  select->add_option("--out", select_opt.out, "Report json path")->required();
  select->add_option("--list", select_opt.list,
                     "Adaptation list path (default: report path with .list.txt)");
  select->add_option("--reference", select_opt.reference,
                     "Reference report json for overlap statistics");
  select->add_option("--exclude-speakers", select_opt.exclude_speakers,
                     "File with one speaker id per line to exclude");

  StatsOptions stats_opt;
  CLI::App* stats = app.add_subcommand("stats", "Selection statistics of a report");
  stats->fallthrough();
  stats->add_option("--report", stats_opt.report, "Selection report json")->required();
  stats->add_option("--reference", stats_opt.reference, "Reference report json");
  stats->add_option("--out", stats_opt.out, "Optional stats json path");

  HistOptions hist_opt;
  CLI::App* hist = app.add_subcommand("hist", "PLDA score histogram of a report");
  hist->fallthrough();
  hist->add_option("--report", hist_opt.report, "Selection report json")->required();
  hist->add_option("--bins", hist_opt.bins, "Number of equal-width bins")
      ->capture_default_str();
  hist->add_option("--group-by", hist_opt.group_by, "none or tag")->capture_default_str();
  hist->add_option("--out", hist_opt.out, "Histogram csv path")->required();

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand("eval", "Objective evaluation over paired inputs");
  eval->fallthrough();
  eval->add_option("--pairs", eval_opt.pairs, "TSV: ref<TAB>test[<TAB>ref_id<TAB>test_id]")
      ->required();
  eval->add_option("--plda", eval_opt.plda, "PLDA model json (enables the PLDA row)");
  eval->add_option("--pool", eval_opt.pool, "Embedding pool for id lookups");
  eval->add_option("--out", eval_opt.out, "Report json path")->required();
  eval->add_option("--fft", eval_opt.fft_size, "LSD/MCD fft size")->capture_default_str();
  eval->add_option("--hop", eval_opt.hop, "LSD/MCD hop")->capture_default_str();
  eval->add_option("--mcd-order", eval_opt.mcd_order, "Cepstral order")->capture_default_str();
  eval->add_option("--frame-period", eval_opt.frame_period_ms, "F0 frame period, ms")
      ->capture_default_str();
  eval->add_option("--f0-min", eval_opt.f0_min, "F0 search floor, Hz")->capture_default_str();
  eval->add_option("--f0-max", eval_opt.f0_max, "F0 search ceiling, Hz")
      ->capture_default_str();

  PqmfOptions pqmf_opt;
  CLI::App* pqmf = app.add_subcommand("pqmf", "Design a filterbank and verify round-trip SNR");
  pqmf->fallthrough();
  pqmf->add_option("--bands", pqmf_opt.bands, "Number of bands")->capture_default_str();
  pqmf->add_option("--taps", pqmf_opt.taps, "Filter order (even)")->capture_default_str();
  pqmf->add_option("--beta", pqmf_opt.beta, "Kaiser beta")->capture_default_str();
  pqmf->add_option("--roundtrip", pqmf_opt.roundtrip,
                   "Input wav (default: 1 s of seeded white noise)");
  pqmf->add_option("--report", pqmf_opt.report, "SNR report json path")->required();

  StftLossOptions stftloss_opt;
  CLI::App* stftloss = app.add_subcommand("stftloss", "Multi-resolution STFT loss probe");
  stftloss->fallthrough();
  stftloss->add_option("--a", stftloss_opt.a, "Signal under test wav")->required();
  stftloss->add_option("--b", stftloss_opt.b, "Reference wav")->required();
  stftloss->add_option("--preset", stftloss_opt.preset, "fullband or subband")
      ->capture_default_str();
  stftloss->add_option("--out", stftloss_opt.out, "Loss json path")->required();

  PoolInfoOptions pool_info_opt;
  CLI::App* pool_info = app.add_subcommand("pool-info", "Summarize an embedding pool");
  pool_info->fallthrough();
  pool_info->add_option("--pool", pool_info_opt.pool, "Pool file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("voxsel");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    g_log_level = parse_log_level(global.log_level);
  } catch (const CLI::Error&) {
    std::cerr << "unknown --log-level: " << global.log_level << '\n';
    return 1;
  }

  try {
    if (select->parsed()) run_select(global, select_opt);
    if (stats->parsed()) run_stats(stats_opt);
    if (hist->parsed()) run_hist(hist_opt);
    if (eval->parsed()) run_eval(eval_opt);
    if (pqmf->parsed()) run_pqmf(global, pqmf_opt);
    if (stftloss->parsed()) run_stftloss(stftloss_opt);
    if (pool_info->parsed()) run_pool_info(pool_info_opt);
  } catch (const ValidationError& e) {
    log(LogLevel::kError, e.what());
    return 2;
  } catch (const std::exception& e) {
    log(LogLevel::kError, e.what());
    return 2;
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace voxsel::cli
