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

#include "dataval/dp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dataval/errors.hpp"
#include "dataval/parallel.hpp"

namespace dataval {

namespace {

double checked_eval(const UtilityFunction& u, std::uint64_t bits, std::size_t n) {
  const double v = u.eval(SubsetMask::from_bits(bits, n));
  if (!std::isfinite(v)) {
    throw NumericalFailure("non-finite utility at mask " + std::to_string(bits));
  }
  return v;
}

// Masks of popcount t over n bits, ascending integer order (Gosper's hack).
std::vector<std::uint32_t> layer_masks(std::size_t n, std::size_t t) {
  std::vector<std::uint32_t> out;
  if (t == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t m = (std::uint64_t{1} << t) - 1;
  while (m < limit) {
    out.push_back(static_cast<std::uint32_t>(m));
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

DpSolution solve_dp(const UtilityFunction& u, DpOptions opt) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("solve_dp: empty population");
  const std::size_t cap = std::min<std::size_t>(opt.exact_cap, 24);
  if (n > cap) {
    throw ResourceLimit("solve_dp: population " + std::to_string(n) +
                        " exceeds exact cap " + std::to_string(cap));
  }

  const std::size_t slots = std::size_t{1} << n;
  std::vector<double> value(slots);
  const std::uint64_t full = slots - 1;
  value[full] = checked_eval(u, full, n);

  // Backward phase, one popcount layer at a time. States within a layer
  // only read the layer above, so they are independent.
  for (std::size_t t = n; t-- > 0;) {
    const std::vector<std::uint32_t> layer = layer_masks(n, t);
    parallel_for(0, layer.size(), opt.threads, [&](std::size_t li) {
      const std::uint64_t m = layer[li];
      double best = 0.0;
      bool any = false;
      for (std::size_t a = 0; a < n; ++a) {
        if ((m >> a) & 1u) continue;
        const double v = value[m | (std::uint64_t{1} << a)];
        if (!any || v > best) {
          best = v;
          any = true;
        }
      }
      value[m] = checked_eval(u, m, n) + best;
    });
  }

  // Forward phase: replay the argmax from V; smallest index wins ties, the
  // same rule the backward maximization used.
  DpSolution sol;
  sol.value_root = value[0];
  sol.optimal_perm.reserve(n);
  sol.optimal_values.values.assign(n, 0.0);
  sol.optimal_values.method_id = "dp";
  std::uint64_t state = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    std::size_t pick = n;
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      if ((state >> a) & 1u) continue;
      const double v = value[state | (std::uint64_t{1} << a)];
      if (pick == n || v > best) {
        best = v;
        pick = a;
      }
    }
    sol.optimal_perm.push_back(pick);
    sol.optimal_values.values[pick] = static_cast<double>(n - t);
    state |= std::uint64_t{1} << pick;
  }
  sol.objective = selection_curve(sol.optimal_perm, u).objective;
  return sol;
}

std::pair<std::vector<std::size_t>, double> brute_force_best_sequence(
    const UtilityFunction& u) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("brute_force_best_sequence: empty population");
  if (n > 9) {
    throw ResourceLimit("brute_force_best_sequence: population " + std::to_string(n) +
                        " exceeds cap 9");
  }

  // Every prefix mask is revisited across permutations; a local dense table
  // keeps the oracle at 2^n utility evaluations.
  const std::size_t slots = std::size_t{1} << n;
  std::vector<double> value(slots);
  for (std::uint64_t m = 0; m < slots; ++m) value[m] = checked_eval(u, m, n);

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::size_t> best_perm;
  double best_sum = 0.0;
  bool any = false;
  do {
    std::uint64_t prefix = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      prefix |= std::uint64_t{1} << perm[k];
      sum += value[prefix];
    }
    // strict improvement keeps the lexicographically smallest optimum
    if (!any || sum > best_sum) {
      best_sum = sum;
      best_perm = perm;
      any = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_perm, best_sum / static_cast<double>(n)};
}

std::pair<SubsetMask, double> brute_force_opt_k(const UtilityFunction& u, std::size_t k,
                                                std::size_t budget) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("brute_force_opt_k: empty population");
  if (k > n) throw InvalidInput("brute_force_opt_k: k exceeds population");
  if (n > 20) {
    throw ResourceLimit("brute_force_opt_k: population " + std::to_string(n) +
                        " exceeds cap 20");
  }
  double combos = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    combos *= static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  if (combos > static_cast<double>(budget)) {
    throw ResourceLimit("brute_force_opt_k: C(n, k) exceeds enumeration budget");
  }

  if (k == 0) {
    const SubsetMask empty(n);
    return {empty, u.eval(empty)};
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  std::uint64_t best_mask = m;
  double best = checked_eval(u, m, n);
  for (;;) {
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
    if (m >= limit) break;
    const double v = checked_eval(u, m, n);
    if (v > best) {  // ascending enumeration: first max is the smallest mask
      best = v;
      best_mask = m;
    }
  }
  return {SubsetMask::from_bits(best_mask, n), best};
}

}  // namespace dataval
