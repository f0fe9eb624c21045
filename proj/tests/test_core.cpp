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
#include <thread>

#include "dataval/curve.hpp"
#include "dataval/dp.hpp"
#include "dataval/errors.hpp"
#include "dataval/linear.hpp"
#include "dataval/memoize.hpp"
#include "dataval/rng.hpp"
#include "dataval/semivalues.hpp"
#include "dataval/subset.hpp"
#include "dataval/values.hpp"
#include "support/testutil.hpp"

using namespace dataval;
using namespace dataval::testing;

TEST_CASE("subset mask basics") {
  SubsetMask s(5);
  CHECK(s.empty());
  CHECK(s.count() == 0);
  s.set(0).set(3);
  CHECK(s.count() == 2);
  CHECK(s.test(3));
  CHECK(!s.test(1));
  CHECK(s.indices() == std::vector<std::size_t>{0, 3});
  CHECK_THROWS_AS(s.set(5), InvalidInput);
  CHECK_THROWS_AS(SubsetMask::from_bits(0b100000, 5), InvalidInput);

  CHECK(SubsetMask::from_bits(0b011, 4) < SubsetMask::from_bits(0b100, 4));
  CHECK(SubsetMask::full(3).low_bits() == 0b111);
  CHECK(s.with(1).count() == 3);
  CHECK(s.count() == 2);  // with() does not mutate
}

TEST_CASE("subset mask above 64 bits") {
  SubsetMask s(130);
  s.set(0).set(70).set(129);
  CHECK(s.count() == 3);
  CHECK(s.test(70));
  CHECK(!s.test(71));
  CHECK(s.indices() == std::vector<std::size_t>{0, 70, 129});
  SubsetMask t = s.without(70);
  CHECK(t.count() == 2);
  CHECK(t < s);
  CHECK(s.hash() != t.hash());
}

TEST_CASE("rank_by_value examples") {
  CHECK(rank_by_value(std::vector<double>{0.2, 0.9, 0.5}) ==
        std::vector<std::size_t>{1, 2, 0});
  // ties break toward the lower original index
  CHECK(rank_by_value(std::vector<double>{1.0, 1.0, 0.0}) ==
        std::vector<std::size_t>{0, 1, 2});
  CHECK(rank_by_value(std::vector<double>{3, 1, 2}) ==
        rank_by_value(std::vector<double>{30, 10, 20}));
  CHECK_THROWS_AS(rank_by_value(std::vector<double>{1.0, std::nan("")}), InvalidInput);
  CHECK_THROWS_AS(rank_by_value(std::vector<double>{}), InvalidInput);
}

TEST_CASE("ranking is invariant under strictly increasing transforms") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(12);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    std::vector<double> affine(v), cubic(v);
    for (double& x : affine) x = 2.0 * x + 1.0;
    for (double& x : cubic) x = x * x * x;
    const auto base = rank_by_value(v);
    CHECK(rank_by_value(affine) == base);
    CHECK(rank_by_value(cubic) == base);
  }
}

TEST_CASE("selection_curve on the cardinality utility") {
  const LinearUtility u = cardinality_utility(3);
  const SelectionCurve c = selection_curve(std::vector<std::size_t>{2, 0, 1}, u);
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[0] == std::pair<std::size_t, double>{1, 1.0});
  CHECK(c.points[1] == std::pair<std::size_t, double>{2, 2.0});
  CHECK(c.points[2] == std::pair<std::size_t, double>{3, 3.0});
  CHECK(c.objective == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("selection_curve on a linear utility") {
  const LinearUtility u(std::vector<double>{3, 1, 2});
  const SelectionCurve c = selection_curve(std::vector<std::size_t>{0, 2, 1}, u);
  CHECK(c.points[0].second == 3.0);
  CHECK(c.points[1].second == 5.0);
  CHECK(c.points[2].second == 6.0);
  CHECK(c.objective == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("selection_curve on the coverage example matches the set-union oracle") {
  const std::vector<std::vector<std::size_t>> sets{{1, 2, 3}, {3, 4}, {4}};
  const CoverageUtility u(BipartiteGraph::unit(3, 5, sets));
  const std::vector<std::size_t> perm{0, 1, 2};
  const SelectionCurve c = selection_curve(perm, u);
  CHECK(c.points[0].second == 3.0);
  CHECK(c.points[1].second == 4.0);
  CHECK(c.points[2].second == 4.0);
  // independent oracle: exhaustive set union over the same prefixes
  SubsetMask prefix(3);
  for (std::size_t k = 0; k < 3; ++k) {
    prefix.set(perm[k]);
    CHECK(c.points[k].second ==
          static_cast<double>(union_coverage(sets, prefix)));
  }
}

TEST_CASE("selection_curve objective equals the mean of its utilities") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const TabularUtility u = random_tabular(6, rng);
    std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
    rng.shuffle(perm);
    const SelectionCurve c = selection_curve(perm, u);
    double mean = 0.0;
    for (const auto& [k, v] : c.points) mean += v;
    mean /= static_cast<double>(c.points.size());
    CHECK(std::abs(c.objective - mean) <= 1e-12);
    // prefixes are nested by construction: k strictly increasing 1..n
    for (std::size_t k = 0; k < c.points.size(); ++k) CHECK(c.points[k].first == k + 1);
  }
}

TEST_CASE("selection_curve rejects non-permutations and reports the failing k") {
  const LinearUtility u(std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(selection_curve(std::vector<std::size_t>{0, 0, 1}, u), InvalidInput);
  CHECK_THROWS_AS(selection_curve(std::vector<std::size_t>{0, 1}, u), InvalidInput);

  const FunctionUtility bomb(3, [](const SubsetMask& s) -> double {
    if (s.count() == 2) throw NumericalFailure("boom");
    return 0.0;
  });
  try {
    selection_curve(std::vector<std::size_t>{0, 1, 2}, bomb);
    FAIL("expected NumericalFailure");
  } catch (const NumericalFailure& e) {
    CHECK(std::string(e.what()).find("k=2") != std::string::npos);
  }
}

TEST_CASE("memoize evaluates each distinct mask once") {
  Rng rng(5);
  const TabularUtility u = random_tabular(4, rng);
  const CountingUtility counted(u);
  const MemoizedUtility memo(counted);
  const SubsetMask m = SubsetMask::of({1, 3}, 4);
  const double a = memo.eval(m);
  const double b = memo.eval(m);
  CHECK(a == b);
  CHECK(counted.evaluations() == 1);

  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    memo.eval(SubsetMask::from_bits(bits, 4));
    memo.eval(SubsetMask::from_bits(bits, 4));
  }
  CHECK(counted.evaluations() == 16);
}

TEST_CASE("memoize agrees with the raw utility on every mask (n <= 10)") {
  Rng rng(7);
  const TabularUtility u = random_tabular(10, rng);
  const MemoizedUtility memo(u);
  for (std::uint64_t bits = 0; bits < (1u << 10); ++bits) {
    const SubsetMask m = SubsetMask::from_bits(bits, 10);
    CHECK(memo.eval(m) == u.eval(m));
  }
}

TEST_CASE("dp followed by exact shapley reuses the shared cache") {
  Rng rng(31);
  const TabularUtility u = random_tabular(10, rng);
  const CountingUtility counted(u);
  const MemoizedUtility memo(counted);
  solve_dp(memo);
  exact_semivalue(memo, SemiValueScheme::shapley());
  CHECK(counted.evaluations() == (1u << 10));
}

TEST_CASE("memoize is safe under concurrent evaluation") {
  Rng rng(13);
  const TabularUtility u = random_tabular(8, rng);
  const CountingUtility counted(u);
  const MemoizedUtility memo(counted);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t bits = 0; bits < 256; ++bits) {
        memo.eval(SubsetMask::from_bits(bits, 8));
      }
    });
  }
  for (auto& th : pool) th.join();
  CHECK(counted.evaluations() == 256);
}

TEST_CASE("sparse memo mode enforces its capacity instead of evicting") {
  Rng rng(17);
  const TabularUtility u = random_tabular(6, rng);
  MemoOptions opt;
  opt.dense_max_n = 0;  // force the sparse path
  opt.max_entries = 4;
  const MemoizedUtility memo(u, opt);
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    memo.eval(SubsetMask::from_bits(bits, 6));
  }
  CHECK_THROWS_AS(memo.eval(SubsetMask::from_bits(17, 6)), ResourceLimit);
  // previously cached masks stay served
  CHECK(memo.eval(SubsetMask::from_bits(2, 6)) == u.eval(SubsetMask::from_bits(2, 6)));
}

TEST_CASE("sparse memo handles populations above 64") {
  const FunctionUtility u(100, [](const SubsetMask& s) {
    return static_cast<double>(s.count());
  });
  const MemoizedUtility memo(u);
  SubsetMask m(100);
  m.set(3).set(64).set(99);
  CHECK(memo.eval(m) == 3.0);
  CHECK(memo.eval(m) == 3.0);
  CHECK(memo.underlying_evaluations() == 1);
}
