// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dataval/subset.hpp"
#include "dataval/utility.hpp"

namespace dataval {

// Diminishing-returns summary c = 1 - min_i Δ_i U(D\{i}) / Δ_i U(∅), with
// marginals taken relative to U(∅) so constant offsets cancel. c is clamped
// to [0,1]; the raw per-point ratios are kept in the report.
struct CurvatureReport {
  double c = 0.0;
  std::size_t argmin_index = 0;
  std::vector<double> ratios;
};

// Requires Δ_i U(∅) > 0 for every i (error names the first offender) and a
// population within the exact cap. Costs 2n + 2 evaluations.
CurvatureReport curvature(const UtilityFunction& u, std::size_t exact_cap = 24);

struct PropertyWitness {
  SubsetMask a;
  SubsetMask b;
  std::size_t element = 0;
  std::string kind;  // "monotonicity" | "submodularity"
};

struct MonotoneSubmodularReport {
  bool monotone = true;
  bool submodular = true;
  std::optional<PropertyWitness> witness;  // first violation found
};

// Exhaustive check over all A ⊆ B ⊆ D and i ∉ B; n <= 12.
MonotoneSubmodularReport check_monotone_submodular(const UtilityFunction& u,
                                                   double tol = 1e-9);

}  // namespace dataval
