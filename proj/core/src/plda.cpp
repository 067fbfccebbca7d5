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

#include "voxsel/plda.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace voxsel {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

// Gaussian elimination with partial pivoting; rejects near-zero pivots.
void check_full_rank(const std::vector<Vec>& transform) {
  std::size_t n = transform.size();
  std::vector<Vec> a = transform;

  double max_abs = 0.0;
  for (const auto& row : a)
    for (double v : row) max_abs = std::max(max_abs, std::abs(v));
  double tol = 1e-12 * std::max(1.0, max_abs);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) <= tol)
      fail("plda transform is singular (near-zero pivot at column " +
           std::to_string(col) + ")");
    std::swap(a[pivot], a[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
}

}  // namespace

void PldaModel::validate() const {
  if (dim == 0) fail("plda model has dimension 0");
  if (mean.size() != dim)
    fail("plda mean has dimension " + std::to_string(mean.size()) + ", expected " +
         std::to_string(dim));
  if (psi.size() != dim)
    fail("plda psi has dimension " + std::to_string(psi.size()) + ", expected " +
         std::to_string(dim));
  if (transform.size() != dim) fail("plda transform is not square");
  for (const auto& row : transform)
    if (row.size() != dim) fail("plda transform is not square");

  if (!all_finite(std::span<const double>(mean))) fail("plda mean contains NaN or Inf");
  for (const auto& row : transform)
    if (!all_finite(std::span<const double>(row))) fail("plda transform contains NaN or Inf");
  for (double p : psi) {
    if (!std::isfinite(p)) fail("plda psi contains NaN or Inf");
    if (p < 0.0) fail("plda psi has a negative entry (" + std::to_string(p) + ")");
  }
  check_full_rank(transform);
}

PldaModel load_plda(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open plda model: " + path.string());

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail("malformed plda model json: " + std::string(e.what()));
  }

  PldaModel model;
  try {
    model.dim = doc.at("dim").get<std::size_t>();
    model.mean = doc.at("mean").get<Vec>();
    model.transform = doc.at("transform").get<std::vector<Vec>>();
    model.psi = doc.at("psi").get<Vec>();
  } catch (const json::exception& e) {
    fail("plda model missing or mistyped field: " + std::string(e.what()));
  }
  model.validate();
  return model;
}

void save_plda(const PldaModel& model, const std::filesystem::path& path) {
  json doc;
  doc["dim"] = model.dim;
  doc["mean"] = model.mean;
  doc["transform"] = model.transform;
  doc["psi"] = model.psi;
  std::ofstream out(path);
  if (!out) fail("cannot write plda model: " + path.string());
  out << doc.dump(2) << '\n';
}

PreparedEmbedding prepare(const PldaModel& model, std::span<const double> embedding) {
  if (embedding.size() != model.dim)
    fail("embedding dimension " + std::to_string(embedding.size()) +
         " does not match plda dimension " + std::to_string(model.dim));

  Vec centered(model.dim);
  for (std::size_t d = 0; d < model.dim; ++d) centered[d] = embedding[d] - model.mean[d];

  Vec y(model.dim);
  for (std::size_t d = 0; d < model.dim; ++d) {
    CompensatedSum dot;
    const Vec& row = model.transform[d];
    for (std::size_t c = 0; c < model.dim; ++c) dot.add(row[c] * centered[c]);
    y[d] = dot.value();
  }

  double norm = l2_norm(y);
  if (norm < 1e-12)
    fail("embedding coincides with the plda mean; cannot length-normalize");
  double scale = std::sqrt(static_cast<double>(model.dim)) / norm;
  for (double& v : y) v *= scale;
  return PreparedEmbedding{std::move(y)};
}

PreparedEmbedding prepare(const PldaModel& model, std::span<const float> embedding) {
  Vec tmp(embedding.begin(), embedding.end());
  return prepare(model, std::span<const double>(tmp));
}

double plda_score(const PldaModel& model, const PreparedEmbedding& enroll,
                  const PreparedEmbedding& test) {
  if (enroll.values.size() != model.dim || test.values.size() != model.dim)
    fail("prepared embedding dimension does not match plda model");

  // The 2*pi normalization constants cancel between the two branches.
  double score = 0.0;
  for (std::size_t d = 0; d < model.dim; ++d) {
    double psi = model.psi[d];
    double r = psi / (psi + 1.0);
    double same_mean = r * enroll.values[d];
    double same_var = 1.0 + r;
    double diff_var = 1.0 + psi;
    double u = test.values[d] - same_mean;
    double loglike_same = -0.5 * (std::log(same_var) + u * u / same_var);
    double loglike_diff =
        -0.5 * (std::log(diff_var) + test.values[d] * test.values[d] / diff_var);
    score += loglike_same - loglike_diff;
  }
  return score;
}

}  // namespace voxsel
