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
#include <utility>
#include <vector>

#include "dataval/curve.hpp"
#include "dataval/subset.hpp"
#include "dataval/utility.hpp"
#include "dataval/values.hpp"

namespace dataval {

struct DpOptions {
  std::size_t exact_cap = 20;  // refuses larger populations; hard ceiling 24
  std::size_t threads = 1;     // backward phase parallelism per popcount layer
};

// Exact solution of the sequential selection problem. optimal_values holds
// v*(i) = n - t*(i), i.e. the integers {0, ..., n-1} with the first-selected
// point scored highest.
struct DpSolution {
  std::vector<std::size_t> optimal_perm;
  double value_root = 0.0;  // V(∅)
  ValueAssignment optimal_values;
  double objective = 0.0;  // mean prefix utility of optimal_perm
};

// Backward pass over the subset lattice:
//   V(s) = U(s)                          if |s| = n
//   V(s) = U(s) + max_{a∉s} V(s ∪ {a})   otherwise
// followed by a forward argmax walk from the empty set. Argmax ties break
// toward the smallest index, so the returned permutation is the
// lexicographically smallest optimal one.
DpSolution solve_dp(const UtilityFunction& u, DpOptions opt = {});

// Exhaustive maximization of Σ_k U(S_k) over all n! permutations; ties keep
// the lexicographically smallest permutation. Returns the mean objective.
// Test oracle; n <= 9.
std::pair<std::vector<std::size_t>, double> brute_force_best_sequence(
    const UtilityFunction& u);

// Exact max of U over all size-k subsets; ties keep the smallest mask in
// integer order. n <= 20 with an enumeration budget.
std::pair<SubsetMask, double> brute_force_opt_k(const UtilityFunction& u, std::size_t k,
                                                std::size_t budget = std::size_t{1} << 22);

}  // namespace dataval
