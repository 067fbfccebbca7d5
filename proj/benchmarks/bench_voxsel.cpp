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

#include <benchmark/benchmark.h>

#include <random>

#include "voxsel/embedding.hpp"
#include "voxsel/losses.hpp"
#include "voxsel/plda.hpp"
#include "voxsel/pqmf.hpp"
#include "voxsel/selection.hpp"
#include "voxsel/stft.hpp"

namespace {

using namespace voxsel;

PldaModel identity_model(std::size_t dim) {
  PldaModel model;
  model.dim = dim;
  model.mean.assign(dim, 0.0);
  model.psi.assign(dim, 1.0);
  model.transform.assign(dim, Vec(dim, 0.0));
  for (std::size_t d = 0; d < dim; ++d) model.transform[d][d] = 1.0;
  return model;
}

EmbeddingPool synthetic_pool(std::size_t speakers, std::size_t utts, std::size_t dim) {
  std::mt19937_64 rng(7);
  std::normal_distribution<float> dist;
  std::vector<UtteranceRecord> records;
  records.reserve(speakers * utts);
  for (std::size_t s = 0; s < speakers; ++s)
    for (std::size_t u = 0; u < utts; ++u) {
      UtteranceRecord rec;
      rec.speaker_id = "s" + std::to_string(s);
      rec.utterance_id = "u" + std::to_string(u);
      rec.embedding.resize(dim);
      for (auto& v : rec.embedding) v = dist(rng);
      records.push_back(std::move(rec));
    }
  return EmbeddingPool::from_records(std::move(records));
}

AudioBuffer noise_signal(std::size_t n) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist(0.0, 0.25);
  AudioBuffer audio;
  audio.sample_rate_hz = 44100;
  audio.samples.resize(n);
  for (auto& s : audio.samples) s = dist(rng);
  return audio;
}

void BM_PldaPrepareScore(benchmark::State& state) {
  auto dim = static_cast<std::size_t>(state.range(0));
  PldaModel model = identity_model(dim);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  Vec a(dim), b(dim);
  for (auto& v : a) v = dist(rng);
  for (auto& v : b) v = dist(rng);
  PreparedEmbedding target = prepare(model, std::span<const double>(b));
  for (auto _ : state) {
    PreparedEmbedding p = prepare(model, std::span<const double>(a));
    benchmark::DoNotOptimize(plda_score(model, p, target));
  }
}
BENCHMARK(BM_PldaPrepareScore)->Arg(128)->Arg(512);

void BM_RankPool(benchmark::State& state) {
  auto records = static_cast<std::size_t>(state.range(0));
  std::size_t dim = 64;
  EmbeddingPool pool = synthetic_pool(records / 20, 20, dim);
  PldaModel model = identity_model(dim);
  Vec target(dim, 0.3);
  SelectionConfig cfg;
  cfg.criterion = Criterion::kDc3;
  cfg.k = 85;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_pool(pool, model, target, cfg));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(pool.size()));
}
BENCHMARK(BM_RankPool)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_StftMagnitude(benchmark::State& state) {
  AudioBuffer audio = noise_signal(44100);
  StftConfig cfg{static_cast<std::size_t>(state.range(0)), 220,
                 static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(stft_magnitude(audio, cfg));
  }
}
BENCHMARK(BM_StftMagnitude)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_MultiResolutionLoss(benchmark::State& state) {
  AudioBuffer y = noise_signal(22050);
  AudioBuffer x = y;
  for (auto& v : x.samples) v *= 1.01;
  StftLossConfig cfg = fullband_stft_preset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(multi_resolution_stft_loss(x, y, cfg));
  }
}
BENCHMARK(BM_MultiResolutionLoss)->Unit(benchmark::kMillisecond);

void BM_PqmfRoundTrip(benchmark::State& state) {
  PqmfBank bank = design_pqmf(5, 62, 9.0);
  AudioBuffer audio = noise_signal(44100);
  for (auto _ : state) {
    auto sub = pqmf_analyze(bank, audio);
    benchmark::DoNotOptimize(pqmf_synthesize(bank, sub, audio.sample_rate_hz));
  }
}
BENCHMARK(BM_PqmfRoundTrip)->Unit(benchmark::kMillisecond);

void BM_PqmfDesign(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(design_pqmf(5, 62, 9.0));
  }
}
BENCHMARK(BM_PqmfDesign)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
