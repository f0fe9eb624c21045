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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dataval/dp.hpp"
#include "dataval/errors.hpp"
#include "dataval/linear.hpp"
#include "dataval/memoize.hpp"
#include "dataval/rng.hpp"
#include "support/testutil.hpp"

using namespace dataval;
using namespace dataval::testing;

TEST_CASE("dp on a linear utility selects descending weights") {
  const LinearUtility u(std::vector<double>{3, 1, 2});
  const DpSolution sol = solve_dp(u);
  CHECK(sol.optimal_perm == std::vector<std::size_t>{0, 2, 1});
  CHECK(sol.optimal_values.values == std::vector<double>{2, 0, 1});
  // brute force confirms over all 6 permutations
  const auto [perm, objective] = brute_force_best_sequence(u);
  CHECK(perm == sol.optimal_perm);
  CHECK(objective == sol.objective);
}

TEST_CASE("symmetric utility resolves ties toward the identity permutation") {
  const LinearUtility u = cardinality_utility(5);
  const DpSolution sol = solve_dp(u);
  CHECK(sol.optimal_perm == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("dp equals the factorial oracle on 50 random utilities (n = 7)") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const TabularUtility u = random_tabular(7, rng);
    const MemoizedUtility memo(u);
    const DpSolution sol = solve_dp(memo);
    const auto [perm, objective] = brute_force_best_sequence(memo);
    CHECK(sol.objective == objective);
    CHECK(sol.optimal_perm == perm);
  }
}

TEST_CASE("optimal values are n minus the selection step") {
  Rng rng(103);
  const TabularUtility u = random_tabular(6, rng);
  const DpSolution sol = solve_dp(u);
  const std::size_t n = 6;
  for (std::size_t t = 0; t < n; ++t) {
    CHECK(sol.optimal_values.values[sol.optimal_perm[t]] ==
          static_cast<double>(n - (t + 1)));
  }
  // v* holds each of {0, ..., n-1} exactly once
  std::vector<double> sorted = sol.optimal_values.values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) CHECK(sorted[i] == static_cast<double>(i));
}

TEST_CASE("adding a constant to the utility never changes the optimal order") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const TabularUtility base = random_tabular(6, rng);
    const FunctionUtility shifted(6, [&](const SubsetMask& s) {
      return base.eval(s) + 5.75;
    });
    CHECK(solve_dp(base).optimal_perm == solve_dp(shifted).optimal_perm);
  }
}

TEST_CASE("dp evaluates each of the 2^n masks exactly once") {
  Rng rng(109);
  const TabularUtility u = random_tabular(9, rng);
  const CountingUtility counted(u);
  const MemoizedUtility memo(counted);
  solve_dp(memo);
  CHECK(counted.evaluations() == (1u << 9));
}

TEST_CASE("parallel backward phase matches the single-threaded run") {
  Rng rng(113);
  const TabularUtility u = random_tabular(10, rng);
  const DpSolution serial = solve_dp(u, {20, 1});
  const DpSolution parallel = solve_dp(u, {20, 4});
  CHECK(serial.optimal_perm == parallel.optimal_perm);
  CHECK(serial.objective == parallel.objective);
  CHECK(serial.value_root == parallel.value_root);
}

TEST_CASE("value_root carries V(∅) = U(∅) + n-step cumulative optimum") {
  const LinearUtility u(std::vector<double>{3, 1, 2});
  const DpSolution sol = solve_dp(u);
  // prefix sums along [0,2,1]: 3 + 5 + 6, plus U(∅) = 0
  CHECK(sol.value_root == doctest::Approx(14.0).epsilon(1e-15));
}

TEST_CASE("dp caps and failure modes") {
  const LinearUtility big(std::vector<double>(21, 1.0));
  CHECK_THROWS_AS(solve_dp(big), ResourceLimit);
  // the cap is configurable but hard-limited to 24
  const LinearUtility huge(std::vector<double>(25, 1.0));
  CHECK_THROWS_AS(solve_dp(huge, {30, 1}), ResourceLimit);
  const LinearUtility ok(std::vector<double>(10, 1.0));
  CHECK_NOTHROW(solve_dp(ok));

  const FunctionUtility bad(3, [](const SubsetMask& s) -> double {
    return s.count() == 2 ? std::nan("") : 0.0;
  });
  CHECK_THROWS_AS(solve_dp(bad), NumericalFailure);
}

TEST_CASE("brute force best sequence basics") {
  const FunctionUtility single(1, [](const SubsetMask&) { return 1.0; });
  CHECK(brute_force_best_sequence(single).first == std::vector<std::size_t>{0});

  const LinearUtility linear(std::vector<double>{3, 1, 2});
  CHECK(brute_force_best_sequence(linear).first == std::vector<std::size_t>{0, 2, 1});

  const LinearUtility big(std::vector<double>(10, 1.0));
  CHECK_THROWS_AS(brute_force_best_sequence(big), ResourceLimit);
}

TEST_CASE("brute force opt_k examples") {
  const LinearUtility linear(std::vector<double>{3, 1, 2});
  const auto [best2, value2] = brute_force_opt_k(linear, 2);
  CHECK(best2 == SubsetMask::of({0, 2}, 3));
  CHECK(value2 == 5.0);

  const auto [full, value_full] = brute_force_opt_k(linear, 3);
  CHECK(full == SubsetMask::full(3));
  CHECK(value_full == 6.0);

  const CoverageUtility cover(
      BipartiteGraph::unit(3, 5, {{1, 2, 3}, {3, 4}, {4}}));
  const auto [best, value] = brute_force_opt_k(cover, 2);
  CHECK(best == SubsetMask::of({0, 1}, 3));
  CHECK(value == 4.0);
  // oracle: enumerate the three pairs by hand
  CHECK(cover.eval(SubsetMask::of({0, 1}, 3)) == 4.0);
  CHECK(cover.eval(SubsetMask::of({0, 2}, 3)) == 4.0);  // tie on value
  CHECK(cover.eval(SubsetMask::of({1, 2}, 3)) == 2.0);
  // {0,1} has the smaller mask (0b011 < 0b101), so the tie picks it
}

TEST_CASE("brute force opt_k enforces its budget") {
  const LinearUtility u(std::vector<double>(20, 1.0));
  CHECK_THROWS_AS(brute_force_opt_k(u, 10, 1000), ResourceLimit);
  const LinearUtility over(std::vector<double>(21, 1.0));
  CHECK_THROWS_AS(brute_force_opt_k(over, 2), ResourceLimit);
}
