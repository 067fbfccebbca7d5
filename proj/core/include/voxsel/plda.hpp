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

#ifndef VOXSEL_PLDA_HPP_
#define VOXSEL_PLDA_HPP_

#include <filesystem>
#include <span>

#include "voxsel/common.hpp"

namespace voxsel {

// Simplified PLDA in the diagonalized space: `transform` maps centered
// embeddings into coordinates where the within-class covariance is the
// identity and the between-class covariance is diag(psi).
struct PldaModel {
  std::size_t dim = 0;
  Vec mean;                    // D
  std::vector<Vec> transform;  // D rows of D
  Vec psi;                     // D, entries >= 0

  void validate() const;  // throws ValidationError on any broken invariant
};

PldaModel load_plda(const std::filesystem::path& path);
void save_plda(const PldaModel& model, const std::filesystem::path& path);

// Centered, transformed, and length-normalized embedding. Norm is
// sqrt(dim) by convention, so unit within-class variance stays unit.
struct PreparedEmbedding {
  Vec values;
};

PreparedEmbedding prepare(const PldaModel& model, std::span<const double> embedding);
PreparedEmbedding prepare(const PldaModel& model, std::span<const float> embedding);

// Log-likelihood ratio "same speaker vs different speaker" for a single
// enrollment cut. Per dimension d, with r = psi_d / (psi_d + 1):
//   same:      test_d ~ N(r * enroll_d, 1 + r)
//   different: test_d ~ N(0, 1 + psi_d)
// and the score is the sum over d of the log-density difference.
double plda_score(const PldaModel& model, const PreparedEmbedding& enroll,
                  const PreparedEmbedding& test);

}  // namespace voxsel

#endif  // VOXSEL_PLDA_HPP_
