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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dataval/utility.hpp"
#include "dataval/values.hpp"

namespace dataval {

// Size-indexed weighting scheme for marginal-contribution values. The
// per-subset weights β_k satisfy Σ_k C(n-1,k) β_k = 1 for Shapley, Beta and
// Banzhaf; leave-one-out puts all mass on k = n-1.
struct SemiValueScheme {
  enum class Kind { shapley, beta, banzhaf, loo };

  Kind kind = Kind::shapley;
  double alpha = 1.0;
  double beta = 1.0;

  static SemiValueScheme shapley() { return {Kind::shapley, 1.0, 1.0}; }
  static SemiValueScheme beta_shapley(double alpha, double beta) {
    return {Kind::beta, alpha, beta};
  }
  static SemiValueScheme banzhaf() { return {Kind::banzhaf, 1.0, 1.0}; }
  static SemiValueScheme loo() { return {Kind::loo, 1.0, 1.0}; }

  // "shapley" | "beta:α,β" | "banzhaf" | "loo"
  static SemiValueScheme parse(std::string_view spec);
  std::string id() const;
};

// Per-subset weight β_s for subsets of size s, 0 <= s <= n-1:
//   Shapley    s!(n-s-1)!/n!  (= 1 / (n · C(n-1, s)))
//   Banzhaf    2^{-(n-1)}
//   Beta(α,β)  B(s+β, n-1-s+α) / B(β, α)   (Beta(1,1) equals Shapley)
//   LOO        1 at s = n-1, else 0
double scheme_weight(const SemiValueScheme& scheme, std::size_t subset_size, std::size_t n);

struct ExactSemiValueOptions {
  std::size_t cap = 14;  // full enumeration costs n · 2^{n-1} marginals
};

// v(i) = Σ_{S ⊆ D\{i}} β_{|S|} [U(S ∪ {i}) - U(S)] by full enumeration.
ValueAssignment exact_semivalue(const UtilityFunction& u, const SemiValueScheme& scheme,
                                ExactSemiValueOptions opt = {});

struct McOptions {
  std::size_t samples = 1000;  // permutations (Shapley/Beta) or subsets (Banzhaf)
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct McSemiValueResult {
  ValueAssignment values;
  std::vector<double> std_errors;  // standard error of each estimate
  std::size_t samples = 0;
};

// Unbiased Monte Carlo estimates. Shapley/Beta reuse one sampled permutation
// for all n marginals with position weights n · C(n-1,|S|) · β_{|S|}.
// Banzhaf shares each uniform subset draw across every point (S\{i} is a
// uniform subset of D\{i}), so one evaluation updates all n estimates.
// Per-sample RNG streams and fixed-chunk reduction make the result bitwise
// identical across runs and thread counts for a fixed seed.
McSemiValueResult mc_semivalue(const UtilityFunction& u, const SemiValueScheme& scheme,
                               const McOptions& opt);

// v(i) = U(D) - U(D \ {i}); n + 1 evaluations.
ValueAssignment loo(const UtilityFunction& u);

}  // namespace dataval
