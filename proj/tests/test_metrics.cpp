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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "voxsel/metrics.hpp"

using namespace voxsel;
using test::identity_plda;

namespace {

AudioBuffer scale(const AudioBuffer& audio, double gain) {
  AudioBuffer out = audio;
  for (auto& v : out.samples) v *= gain;
  return out;
}

// Straight-line LSD recomputation from the same magnitudes.
double lsd_oracle(const AudioBuffer& x, const AudioBuffer& y, const StftConfig& cfg) {
  SpectralFrameSeries sx = stft_magnitude(x, cfg);
  SpectralFrameSeries sy = stft_magnitude(y, cfg);
  double frame_sum = 0.0;
  for (std::size_t t = 0; t < sy.num_frames(); ++t) {
    double acc = 0.0;
    for (std::size_t b = 0; b < sy.num_bins; ++b) {
      double d = 20.0 * std::log10(sx.frames[t][b] + 1e-10) -
                 20.0 * std::log10(sy.frames[t][b] + 1e-10);
      acc += d * d;
    }
    frame_sum += std::sqrt(acc / static_cast<double>(sy.num_bins));
  }
  return frame_sum / static_cast<double>(sy.num_frames());
}

}  // namespace

TEST_CASE("lsd anchors and oracle") {
  StftConfig cfg{1024, 220, 1024};
  AudioBuffer y = test::white_noise(16000, 0.4, 0.25, 201);
  CHECK(lsd(y, y, cfg) == 0.0);

  AudioBuffer x2 = scale(y, 2.0);
  CHECK(lsd(x2, y, cfg) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-6 / 6.0));

  AudioBuffer x = test::white_noise(16000, 0.4, 0.25, 202);
  CHECK(lsd(x, y, cfg) == doctest::Approx(lsd_oracle(x, y, cfg)).epsilon(1e-9));
}

TEST_CASE("lsd length policy: within one hop is aligned, beyond is an error") {
  StftConfig cfg{1024, 220, 1024};
  AudioBuffer y = test::white_noise(16000, 0.4, 0.25, 203);
  AudioBuffer x = y;
  x.samples.resize(x.samples.size() - 100);  // less than one hop shorter
  double aligned = 0.0;
  CHECK_NOTHROW(aligned = lsd(x, y, cfg));
  CHECK(std::isfinite(aligned));

  AudioBuffer far = y;
  far.samples.resize(far.samples.size() - 500);
  CHECK_THROWS_WITH_AS(lsd(far, y, cfg), doctest::Contains("hop"), ValidationError);
}

TEST_CASE("mcd anchors") {
  AudioBuffer y = test::white_noise(16000, 0.4, 0.25, 204);
  CHECK(mcd(y, y, 24) == 0.0);
  CHECK(mcd(scale(y, 2.0), y, 24) < 1e-6);  // gain lives in the excluded c0
}

TEST_CASE("mcd of a constructed cepstral offset matches the closed form") {
  std::size_t frames = 7, order = 24;
  std::vector<Vec> cy(frames, Vec(order + 1, 0.3));
  std::vector<Vec> cx = cy;
  for (auto& frame : cx) frame[1] += 0.1;
  double expected = 10.0 * std::sqrt(2.0) / std::log(10.0) * 0.1;
  CHECK(mcd_from_cepstra(cx, cy) == doctest::Approx(expected).epsilon(1e-12));

  // One-frame slack is tolerated, more is not.
  std::vector<Vec> one_less(cx.begin(), cx.end() - 1);
  CHECK(mcd_from_cepstra(one_less, cy) == doctest::Approx(expected).epsilon(1e-12));
  std::vector<Vec> two_less(cx.begin(), cx.end() - 2);
  CHECK_THROWS_AS(mcd_from_cepstra(two_less, cy), ValidationError);
}

TEST_CASE("f0 metrics: identical, shifted pitch, and opposite voicing") {
  F0Config cfg;
  AudioBuffer a220 = test::sine_wave(220.0, 44100, 1.0, 0.5);
  F0Metrics same = f0_metrics(a220, a220, cfg);
  CHECK(same.rmse_hz == 0.0);
  CHECK(same.uv_error_pct == 0.0);

  AudioBuffer a230 = test::sine_wave(230.0, 44100, 1.0, 0.5);
  F0Metrics shifted = f0_metrics(a220, a230, cfg);
  CHECK(shifted.rmse_hz == doctest::Approx(10.0).epsilon(0.15));
  CHECK(shifted.uv_error_pct == 0.0);

  AudioBuffer silence;
  silence.sample_rate_hz = 44100;
  silence.samples.assign(a220.samples.size(), 0.0);
  F0Metrics opposite = f0_metrics(a220, silence, cfg);
  CHECK(opposite.uv_error_pct == 100.0);
}

TEST_CASE("f0 rmse and uv error are symmetric") {
  F0Config cfg;
  AudioBuffer a = test::sine_wave(220.0, 44100, 0.5, 0.5);
  AudioBuffer b = test::white_noise(44100, 0.5, 0.05, 205);
  F0Metrics ab = f0_metrics(a, b, cfg);
  F0Metrics ba = f0_metrics(b, a, cfg);
  CHECK(ab.rmse_hz == ba.rmse_hz);
  CHECK(ab.uv_error_pct == ba.uv_error_pct);
}

TEST_CASE("cosine similarity anchors and properties") {
  Vec a{1.0, 2.0, 3.0};
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  Vec ex{1.0, 0.0}, ey{0.0, 1.0};
  CHECK(cosine_similarity(ex, ey) == 0.0);

  Vec na{-1.0, -2.0, -3.0};
  CHECK(cosine_similarity(a, na) == doctest::Approx(-1.0).epsilon(1e-12));

  Vec scaled{2.5, 5.0, 7.5};
  CHECK(cosine_similarity(a, scaled) == doctest::Approx(1.0).epsilon(1e-12));

  Vec zero{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(cosine_similarity(a, zero), ValidationError);
  Vec wrong{1.0};
  CHECK_THROWS_AS(cosine_similarity(a, wrong), ValidationError);
}

TEST_CASE("evaluate_pair_set: identical pair zeroes the distortion rows") {
  AudioBuffer y = test::sine_wave(220.0, 44100, 0.5, 0.5);
  PairInput pair;
  pair.id = "p0";
  pair.ref_audio = y;
  pair.test_audio = y;
  pair.ref_embedding = Vec{1.0, 2.0, 3.0, 4.0};
  pair.test_embedding = Vec{1.0, 2.0, 3.0, 4.0};

  PldaModel model = identity_plda(4, 1.0);
  MetricsConfig cfg;
  std::vector<PairInput> pairs{pair};
  EvalReport report = evaluate_pair_set(pairs, &model, cfg);

  REQUIRE(report.per_utterance.size() == 1);
  CHECK(*report.lsd_db == 0.0);
  CHECK(*report.mcd_db == 0.0);
  CHECK(*report.f0_rmse_hz == 0.0);
  CHECK(*report.uv_error_pct == 0.0);
  CHECK(*report.cos_sim == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.plda.has_value());
}

TEST_CASE("evaluate_pair_set aggregates are means and missing inputs drop rows") {
  PairInput e1, e2;
  e1.id = "a";
  e1.ref_embedding = Vec{1.0, 0.0};
  e1.test_embedding = Vec{1.0, 0.0};
  e2.id = "b";
  e2.ref_embedding = Vec{1.0, 0.0};
  e2.test_embedding = Vec{0.0, 1.0};

  MetricsConfig cfg;
  std::vector<PairInput> pairs{e1, e2};
  EvalReport report = evaluate_pair_set(pairs, nullptr, cfg);
  CHECK(*report.cos_sim == doctest::Approx(0.5).epsilon(1e-12));  // mean of 1 and 0
  CHECK(!report.plda.has_value());                                // no model given
  CHECK(!report.lsd_db.has_value());                              // no audio given

  // Aggregate equals a brute-force recomputation over the breakdown.
  double acc = 0.0;
  for (const auto& e : report.per_utterance) acc += *e.cos_sim;
  CHECK(*report.cos_sim == doctest::Approx(acc / 2.0).epsilon(1e-15));
}

TEST_CASE("evaluate_pair_set with nothing computable is an error") {
  PairInput empty;
  empty.id = "x";
  MetricsConfig cfg;
  std::vector<PairInput> pairs{empty};
  CHECK_THROWS_WITH_AS(evaluate_pair_set(pairs, nullptr, cfg),
                       doctest::Contains("no computable"), ValidationError);
  CHECK_THROWS_AS(evaluate_pair_set(std::vector<PairInput>{}, nullptr, cfg),
                  ValidationError);
}

TEST_CASE("distortion metrics ignore a joint polarity flip") {
  StftConfig cfg{1024, 220, 1024};
  AudioBuffer y = test::white_noise(16000, 0.3, 0.25, 206);
  AudioBuffer x = test::white_noise(16000, 0.3, 0.25, 207);
  CHECK(lsd(scale(x, -1.0), scale(y, -1.0), cfg) == lsd(x, y, cfg));
  CHECK(mcd(scale(x, -1.0), scale(y, -1.0), 20) ==
        doctest::Approx(mcd(x, y, 20)).epsilon(1e-12));
}
