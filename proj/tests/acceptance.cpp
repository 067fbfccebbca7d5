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

// Acceptance suite: one self-contained check per criterion, each printed
// as a single PASS/FAIL line with its wall time and budget. The process
// exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "voxsel/audio.hpp"
#include "voxsel/cli.hpp"
#include "voxsel/embedding.hpp"
#include "voxsel/losses.hpp"
#include "voxsel/metrics.hpp"
#include "voxsel/plda.hpp"
#include "voxsel/pqmf.hpp"
#include "voxsel/selection.hpp"

using namespace voxsel;
using test::TempDir;
using test::identity_plda;

namespace {

struct Failure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Failure{message};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// ---------------------------------------------------------------------
// 1. Selection-formula fidelity against a straight-line reimplementation.
void criterion_formulas() {
  require(sigmoid_score(0.0, 0.5) == 2.0 / 3.0, "sigmoid(0, 0.5) must equal 2/3 exactly");

  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> raw_dist(-30.0, 30.0);
  std::uniform_real_distribution<double> pos_dist(0.0, 8.0);
  std::uniform_real_distribution<double> alpha_dist(0.0, 1.0);
  std::uniform_real_distribution<double> c_dist(0.05, 3.0);

  auto check_rel = [](double got, double want, const char* which, int trial) {
    double denom = std::max(std::abs(want), 1e-300);
    require(std::abs(got - want) / denom <= 1e-12,
            std::string(which) + " mismatch at trial " + std::to_string(trial) + ": got " +
                fmt(got) + ", want " + fmt(want));
  };

  for (int trial = 0; trial < 1000; ++trial) {
    double raw = raw_dist(rng);
    double sigma = trial % 17 == 0 ? 0.0 : pos_dist(rng);
    double dist = trial % 23 == 0 ? 0.0 : pos_dist(rng);
    SelectionConfig cfg;
    cfg.alpha = alpha_dist(rng);
    cfg.sigmoid_c = c_dist(rng);

    double sig = 1.0 / (1.0 + cfg.sigmoid_c * std::exp(-raw));
    cfg.criterion = Criterion::kDc1;
    check_rel(score_utterance(cfg, raw, sigma, dist).final_score, raw, "DC1", trial);
    cfg.criterion = Criterion::kDc2;
    check_rel(score_utterance(cfg, raw, sigma, dist).final_score,
              sig / std::pow(std::max(sigma, cfg.epsilon), cfg.alpha), "DC2", trial);
    cfg.criterion = Criterion::kDc3;
    check_rel(score_utterance(cfg, raw, sigma, dist).final_score,
              sig / std::pow(std::max(sigma * dist, cfg.epsilon), cfg.alpha), "DC3", trial);
  }
}

// ---------------------------------------------------------------------
// 2. Criterion reductions on randomized pools of 50 speakers x 20 utts.
void criterion_reductions() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> mean_dist(-9, 9);
  const std::size_t dim = 12, speakers = 50, pairs = 10;

  for (int pool_idx = 0; pool_idx < 100; ++pool_idx) {
    // Unit-radius clouds on integer means: every utterance distance is
    // exactly 1 and every sigma_n is exactly 1.
    std::vector<UtteranceRecord> records;
    records.reserve(speakers * 2 * pairs);
    for (std::size_t s = 0; s < speakers; ++s) {
      std::vector<float> mean(dim);
      for (auto& v : mean) v = static_cast<float>(mean_dist(rng));
      for (std::size_t j = 0; j < pairs; ++j) {
        UtteranceRecord up, down;
        up.speaker_id = down.speaker_id = "s" + std::to_string(s);
        up.utterance_id = "u" + std::to_string(2 * j);
        down.utterance_id = "u" + std::to_string(2 * j + 1);
        up.embedding = mean;
        down.embedding = mean;
        up.embedding[j % dim] += 1.0f;
        down.embedding[j % dim] -= 1.0f;
        records.push_back(std::move(up));
        records.push_back(std::move(down));
      }
    }
    EmbeddingPool pool = EmbeddingPool::from_records(std::move(records));
    PldaModel model = identity_plda(dim, 1.0);
    Vec target(dim);
    for (auto& v : target) v = static_cast<double>(mean_dist(rng)) + 0.5;

    SelectionConfig cfg;
    cfg.k = 10;
    cfg.criterion = Criterion::kDc1;
    SelectionReport r1 = rank_pool(pool, model, target, cfg);
    cfg.criterion = Criterion::kDc2;
    SelectionReport r2 = rank_pool(pool, model, target, cfg);
    cfg.criterion = Criterion::kDc3;
    SelectionReport r3 = rank_pool(pool, model, target, cfg);

    // DC2 must rank like DC1 wherever the sigmoid separates scores in
    // doubles. Raw scores within rounding of each other can collapse to
    // one sigmoid value (or swap by an ulp), so candidates whose DC2
    // scores sit within 1e-12 of their neighbors form tie groups, and
    // each group has to occupy a contiguous block of the DC1 ranking.
    std::map<std::pair<std::string, std::string>, std::size_t> dc1_pos;
    for (std::size_t i = 0; i < r1.ranked.size(); ++i)
      dc1_pos[{r1.ranked[i].speaker_id, r1.ranked[i].utterance_id}] = i;

    constexpr double kTieTol = 1e-12;
    std::size_t i = 0, max_pos_so_far = 0;
    bool first_group = true;
    while (i < r2.ranked.size()) {
      std::size_t j = i;
      std::size_t group_min = r2.ranked.size(), group_max = 0;
      while (j < r2.ranked.size() &&
             (j == i ||
              r2.ranked[j - 1].final_score - r2.ranked[j].final_score <= kTieTol)) {
        std::size_t pos = dc1_pos.at({r2.ranked[j].speaker_id, r2.ranked[j].utterance_id});
        group_min = std::min(group_min, pos);
        group_max = std::max(group_max, pos);
        ++j;
      }
      require(first_group || group_min > max_pos_so_far,
              "DC2 ranking diverged from DC1 near rank " + std::to_string(i) + " in pool " +
                  std::to_string(pool_idx));
      max_pos_so_far = std::max(max_pos_so_far, group_max);
      first_group = false;
      i = j;
    }

    for (std::size_t r = 0; r < r2.ranked.size(); ++r) {
      require(r3.ranked[r].speaker_id == r2.ranked[r].speaker_id &&
                  r3.ranked[r].utterance_id == r2.ranked[r].utterance_id,
              "DC3 ranking diverged from DC2 at rank " + std::to_string(r) + " in pool " +
                  std::to_string(pool_idx));
      require(r3.ranked[r].final_score == r2.ranked[r].final_score,
              "DC3 score differs from DC2 with unit distances at rank " + std::to_string(r));
    }
  }

  // The distance-one reduction also holds pointwise for arbitrary sigma.
  std::uniform_real_distribution<double> sigma_dist(0.01, 10.0);
  std::uniform_real_distribution<double> raw_dist(-5.0, 5.0);
  SelectionConfig dc2{Criterion::kDc2, 10, 0.1, 0.5, 1e-6};
  SelectionConfig dc3{Criterion::kDc3, 10, 0.1, 0.5, 1e-6};
  for (int trial = 0; trial < 1000; ++trial) {
    double raw = raw_dist(rng), sigma = sigma_dist(rng);
    require(score_utterance(dc3, raw, sigma, 1.0).final_score ==
                score_utterance(dc2, raw, sigma, 1.0).final_score,
            "DC3 != DC2 at unit utterance distance");
  }
}

// ---------------------------------------------------------------------
// 3. PLDA against 1-D quadrature of the latent-variable LLR.
double normal_pdf(double x, double mean, double var) {
  double d = x - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

double llr_quadrature(double psi, double enroll, double test) {
  double p_same;
  if (psi == 0.0) {
    p_same = normal_pdf(enroll, 0.0, 1.0) * normal_pdf(test, 0.0, 1.0);
  } else {
    const double limit = 20.0;
    const int n = 40000;
    double h = 2.0 * limit / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      double z = -limit + h * i;
      double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * normal_pdf(z, 0.0, psi) * normal_pdf(enroll, z, 1.0) *
             normal_pdf(test, z, 1.0);
    }
    p_same = acc * h / 3.0;
  }
  return std::log(p_same) - std::log(normal_pdf(enroll, 0.0, 1.0 + psi)) -
         std::log(normal_pdf(test, 0.0, 1.0 + psi));
}

void criterion_plda_oracle() {
  for (int pi = 0; pi < 10; ++pi)
    for (int ei = 0; ei < 10; ++ei)
      for (int ti = 0; ti < 10; ++ti) {
        double psi = 4.0 * pi / 9.0;
        double enroll = -3.0 + 6.0 * ei / 9.0;
        double test = -3.0 + 6.0 * ti / 9.0;
        PldaModel model = identity_plda(1, psi);
        double got = plda_score(model, PreparedEmbedding{{enroll}}, PreparedEmbedding{{test}});
        double want = llr_quadrature(psi, enroll, test);
        require(std::abs(got - want) <= 1e-6,
                "plda llr mismatch at psi=" + fmt(psi) + " enroll=" + fmt(enroll) +
                    " test=" + fmt(test) + ": got " + fmt(got) + ", want " + fmt(want));
      }
}

// ---------------------------------------------------------------------
// 4. End-to-end selection on separated Gaussian speakers.
void criterion_synthetic_selection() {
  const std::size_t dim = 16;
  PldaModel model = identity_plda(dim, 1.0);
  SelectionConfig cfg;
  cfg.criterion = Criterion::kDc1;
  cfg.k = 10;

  int clean_trials = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> noise(0.0f, 0.5f);
    Vec means[3] = {Vec(dim, 0.0), Vec(dim, 0.0), Vec(dim, 0.0)};
    means[0][0] = 10.0;
    means[1][1] = 10.0;
    means[2][2] = 10.0;

    std::vector<UtteranceRecord> records;
    const char* names[3] = {"A", "B", "C"};
    for (int s = 0; s < 3; ++s)
      for (int u = 0; u < 10; ++u) {
        UtteranceRecord rec;
        rec.speaker_id = names[s];
        rec.utterance_id = "u" + std::to_string(u);
        rec.embedding.resize(dim);
        for (std::size_t d = 0; d < dim; ++d)
          rec.embedding[d] = static_cast<float>(means[s][d]) + noise(rng);
        records.push_back(std::move(rec));
      }

    SelectionReport report =
        rank_pool(EmbeddingPool::from_records(std::move(records)), model, means[0], cfg);
    bool all_a = true;
    for (const auto& s : report.selected) all_a = all_a && s.speaker_id == "A";
    if (all_a) ++clean_trials;
  }
  require(clean_trials >= 99, "only " + std::to_string(clean_trials) +
                                  "/100 trials selected speaker A exclusively");
}

// ---------------------------------------------------------------------
// 5. Adaptation-list count: 85 selected + 5 targets = 90 entries.
void criterion_pipeline_counts() {
  TempDir dir;
  const std::size_t dim = 64;
  std::mt19937_64 rng(5005);

  std::vector<UtteranceRecord> records;
  records.reserve(10000);
  for (int s = 0; s < 200; ++s)
    for (int u = 0; u < 50; ++u) {
      UtteranceRecord rec;
      rec.speaker_id = "s" + std::to_string(s);
      rec.utterance_id = "u" + std::to_string(u);
      rec.embedding = test::random_embedding(rng, dim);
      records.push_back(std::move(rec));
    }
  auto pool_path = dir.file("pool.xvb");
  EmbeddingPool::from_records(std::move(records)).save(pool_path, PoolFormat::kXvecbin);

  std::vector<UtteranceRecord> target;
  for (int u = 0; u < 5; ++u) {
    UtteranceRecord rec;
    rec.speaker_id = "target";
    rec.utterance_id = "t" + std::to_string(u);
    rec.embedding = test::random_embedding(rng, dim);
    target.push_back(std::move(rec));
  }
  auto target_path = dir.file("target.xvb");
  EmbeddingPool::from_records(std::move(target)).save(target_path, PoolFormat::kXvecbin);

  auto plda_path = dir.file("plda.json");
  save_plda(identity_plda(dim, 1.0), plda_path);

  auto out = dir.file("report.json");
  int code = cli::run({"select", "--pool", pool_path.string(), "--plda", plda_path.string(),
                       "--target", target_path.string(), "--criterion", "dc3", "--k", "85",
                       "--out", out.string()});
  require(code == 0, "voxsel select exited with code " + std::to_string(code));

  std::ifstream list(dir.file("report.list.txt"));
  require(static_cast<bool>(list), "adaptation list was not written");
  std::size_t lines = 0;
  std::string line;
  while (std::getline(list, line))
    if (!line.empty()) ++lines;
  require(lines == 90, "adaptation list has " + std::to_string(lines) + " entries, want 90");
}

// ---------------------------------------------------------------------
// 6. PQMF near-perfect reconstruction.
void criterion_pqmf() {
  PqmfBank bank = design_pqmf(5, 62, 9.0);

  AudioBuffer noise = test::white_noise(44100, 1.0, 0.25, 6006);
  double snr_noise = pqmf_round_trip_snr_db(bank, noise);
  require(snr_noise >= 40.0, "white-noise round-trip snr " + fmt(snr_noise) + " dB < 40 dB");

  const double freqs[5] = {200.0, 1300.0, 4700.0, 9200.0, 15800.0};
  const double amps[5] = {0.4, 0.3, 0.15, 0.1, 0.05};
  AudioBuffer tones;
  tones.sample_rate_hz = 44100;
  tones.samples.assign(44100, 0.0);
  for (int k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < tones.samples.size(); ++i)
      tones.samples[i] +=
          amps[k] * std::sin(2.0 * std::numbers::pi * freqs[k] * static_cast<double>(i) / 44100.0);
  double snr_tones = pqmf_round_trip_snr_db(bank, tones);
  require(snr_tones >= 40.0, "five-tone round-trip snr " + fmt(snr_tones) + " dB < 40 dB");
}

// ---------------------------------------------------------------------
// 7. STFT loss anchors on both built-in presets.
void criterion_stft_loss() {
  AudioBuffer y = test::white_noise(44100, 0.5, 0.25, 7007);
  AudioBuffer x2 = y;
  for (auto& v : x2.samples) v *= 2.0;

  for (const auto& preset : {fullband_stft_preset(), subband_stft_preset()}) {
    double self = multi_resolution_stft_loss(y, y, preset);
    require(self == 0.0, "loss(x, x) = " + fmt(self) + ", want exact 0");
    for (const auto& cfg : preset.resolutions) {
      StftLossTerms terms = stft_loss_single(x2, y, cfg);
      require(std::abs(terms.spectral_convergence - 1.0) <= 1e-9,
              "sc(2y, y) = " + fmt(terms.spectral_convergence) + " at fft " +
                  std::to_string(cfg.fft_size));
      require(std::abs(terms.log_magnitude - std::log(2.0)) <= 1e-9,
              "mag(2y, y) = " + fmt(terms.log_magnitude) + " at fft " +
                  std::to_string(cfg.fft_size));
    }
  }
}

// ---------------------------------------------------------------------
// 8. GAN loss anchors from Eqs. 1-3.
void criterion_gan_losses() {
  std::vector<Vec> perfect_real(3, Vec(16, 1.0));
  std::vector<Vec> perfect_fake(3, Vec(16, 0.0));
  double ld = discriminator_loss(perfect_real, perfect_fake);
  require(ld == 0.0, "perfect-discriminator L_D = " + fmt(ld) + ", want 0");

  std::vector<Vec> fooled_real(4, Vec(16, 0.0));
  std::vector<Vec> fooled_fake(4, Vec(16, 1.0));
  double fooled = discriminator_loss(fooled_real, fooled_fake);
  require(fooled == 2.0, "fully-fooled L_D = " + fmt(fooled) + ", want per-k contribution 2");

  double lg = generator_loss(1.0, 0.0, GanLossWeights{2.5});
  require(lg == 2.5, "generator_loss(1, 0, 2.5) = " + fmt(lg) + ", want 2.5");
}

// ---------------------------------------------------------------------
// 9. Objective metric anchors.
void criterion_metric_anchors() {
  StftConfig cfg{2048, 220, 2048};
  AudioBuffer y = test::white_noise(44100, 0.5, 0.25, 9009);

  require(lsd(y, y, cfg) == 0.0, "lsd(x, x) != 0");
  require(mcd(y, y, 24) == 0.0, "mcd(x, x) != 0");
  F0Metrics self = f0_metrics(y, y, F0Config{});
  require(self.rmse_hz == 0.0 && self.uv_error_pct == 0.0, "f0 metrics on identical input");

  AudioBuffer y2 = y;
  for (auto& v : y2.samples) v *= 2.0;
  double lsd_gain = lsd(y2, y, cfg);
  double want = 20.0 * std::log10(2.0);
  require(std::abs(lsd_gain - want) <= 1e-6,
          "lsd(2y, y) = " + fmt(lsd_gain) + ", want " + fmt(want) + " +- 1e-6");

  double mcd_gain = mcd(y2, y, 24);
  require(mcd_gain < 1e-6, "mcd gain invariance violated: " + fmt(mcd_gain) + " dB");

  AudioBuffer a220 = test::sine_wave(220.0, 44100, 1.0, 0.5);
  AudioBuffer a230 = test::sine_wave(230.0, 44100, 1.0, 0.5);
  F0Metrics pair = f0_metrics(a220, a230, F0Config{});
  require(std::abs(pair.rmse_hz - 10.0) <= 1.5,
          "f0 rmse = " + fmt(pair.rmse_hz) + " Hz, want 10 +- 1.5");
  require(pair.uv_error_pct == 0.0, "u/v error = " + fmt(pair.uv_error_pct) + "%, want 0");
}

// ---------------------------------------------------------------------
// 10. Table-3-style statistics against brute-force recounts.
void criterion_statistics() {
  std::mt19937_64 rng(1010);
  auto mk = [](std::string sp, std::string ut) {
    ScoredUtterance s;
    s.speaker_id = std::move(sp);
    s.utterance_id = std::move(ut);
    return s;
  };

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScoredUtterance> selected;
    int n = 1 + static_cast<int>(rng() % 85);
    for (int i = 0; i < n; ++i)
      selected.push_back(mk("s" + std::to_string(rng() % 30),
                            "t" + std::to_string(trial) + "u" + std::to_string(i)));
    SelectionStats stats = selection_stats(selected);

    std::map<std::string, int> counts;
    for (const auto& s : selected) counts[s.speaker_id]++;
    std::size_t suspected = 0;
    for (const auto& [_, c] : counts)
      if (c == 1) ++suspected;
    require(stats.num_speakers == counts.size(), "speaker count mismatch vs brute force");
    require(stats.num_suspected == suspected, "suspected count mismatch vs brute force");

    std::span<const ScoredUtterance> self_ref(selected);
    SelectionStats identity = selection_stats(selected, &self_ref);
    require(*identity.utterance_overlap_pct == 100.0 && *identity.speaker_overlap_pct == 100.0,
            "identity reference must give 100/100% overlap");

    std::vector<ScoredUtterance> disjoint;
    for (int i = 0; i < 10; ++i) disjoint.push_back(mk("zz" + std::to_string(i), "q"));
    std::span<const ScoredUtterance> disjoint_ref(disjoint);
    SelectionStats none = selection_stats(selected, &disjoint_ref);
    require(*none.utterance_overlap_pct == 0.0 && *none.speaker_overlap_pct == 0.0,
            "disjoint reference must give 0/0% overlap");
  }
}

// ---------------------------------------------------------------------
// 11. Byte-identical voxsel select reports across thread counts.
void criterion_determinism() {
  TempDir dir;
  const std::size_t dim = 64;
  std::mt19937_64 rng(1111);

  std::vector<UtteranceRecord> records;
  records.reserve(50000);
  for (int s = 0; s < 500; ++s)
    for (int u = 0; u < 100; ++u) {
      UtteranceRecord rec;
      rec.speaker_id = "s" + std::to_string(s);
      rec.utterance_id = "u" + std::to_string(u);
      rec.embedding = test::random_embedding(rng, dim);
      records.push_back(std::move(rec));
    }
  auto pool_path = dir.file("pool.xvb");
  EmbeddingPool::from_records(std::move(records)).save(pool_path, PoolFormat::kXvecbin);

  std::vector<UtteranceRecord> target;
  for (int u = 0; u < 5; ++u) {
    UtteranceRecord rec;
    rec.speaker_id = "target";
    rec.utterance_id = "t" + std::to_string(u);
    rec.embedding = test::random_embedding(rng, dim);
    target.push_back(std::move(rec));
  }
  auto target_path = dir.file("target.xvb");
  EmbeddingPool::from_records(std::move(target)).save(target_path, PoolFormat::kXvecbin);

  auto plda_path = dir.file("plda.json");
  save_plda(identity_plda(dim, 1.0), plda_path);

  auto run_once = [&](const char* threads, const std::string& tag) {
    auto out = dir.file("report_" + tag + ".json");
    int code = cli::run({"--threads", threads, "select", "--pool", pool_path.string(),
                         "--plda", plda_path.string(), "--target", target_path.string(),
                         "--criterion", "dc3", "--k", "85", "--out", out.string()});
    require(code == 0, "voxsel select exited with code " + std::to_string(code));
    std::ifstream in(out, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };

  std::string report1 = run_once("1", "t1");
  std::string report8 = run_once("8", "t8");
  require(!report1.empty(), "empty report");
  require(report1 == report8, "reports differ between --threads 1 and --threads 8");
}

struct CriterionCase {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void()> fn;
};

}  // namespace

int main() {
  std::vector<CriterionCase> cases = {
      {1, "selection-formula fidelity (Eqs. 4-7, 1000 tuples, 1e-12)", 1.0,
       criterion_formulas},
      {2, "criterion reductions (DC3->DC2, DC2~DC1 on 100 pools)", 10.0,
       criterion_reductions},
      {3, "plda vs 1-D latent-variable quadrature (10x10x10 grid, 1e-6)", 30.0,
       criterion_plda_oracle},
      {4, "synthetic end-to-end selection (3 Gaussian speakers, DC1)", 30.0,
       criterion_synthetic_selection},
      {5, "adaptation list count (85 selected + 5 targets = 90)", 5.0,
       criterion_pipeline_counts},
      {6, "pqmf round-trip snr >= 40 dB (5 bands, 62 taps, beta 9)", 5.0, criterion_pqmf},
      {7, "stft loss anchors on both built-in presets", 60.0, criterion_stft_loss},
      {8, "gan loss anchors (Eqs. 1-3, lambda_adv 2.5)", 5.0, criterion_gan_losses},
      {9, "metric anchors (lsd/mcd/f0 on synthetic pairs)", 60.0, criterion_metric_anchors},
      {10, "selection statistics vs brute-force recounts", 10.0, criterion_statistics},
      {11, "byte-identical reports across --threads 1/8 (50k pool)", 60.0,
       criterion_determinism},
  };

  int failures = 0;
  for (const auto& c : cases) {
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.fn();
    } catch (const Failure& f) {
      error = f.message;
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed < c.budget_seconds;
    bool ok = error.empty() && in_budget;
    if (!ok) ++failures;
    std::printf("%s %2d [%6.2fs < %4.0fs] %s%s%s\n", ok ? "PASS" : "FAIL", c.id, elapsed,
                c.budget_seconds, c.name, error.empty() ? "" : " -- ", error.c_str());
    if (!in_budget && error.empty())
      std::printf("     %2d exceeded its runtime budget\n", c.id);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(cases.size()) - failures,
              cases.size());
  return failures;
}
