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

#include <algorithm>
#include <cmath>

#include "dataval/errors.hpp"
#include "dataval/linear.hpp"
#include "dataval/memoize.hpp"
#include "dataval/rng.hpp"
#include "dataval/semivalues.hpp"
#include "dataval/surrogate.hpp"
#include "support/testutil.hpp"

using namespace dataval;
using namespace dataval::testing;

namespace {

// Explicit myopic rollout under Û(S) = Σ_{i∈S} θ_i; ties to smaller index.
std::vector<std::size_t> rollout(const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> seq;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      if (taken[a]) continue;
      const double gain = theta[a];  // Û(s∪{a}) - Û(s)
      if (pick == n || gain > best) {
        best = gain;
        pick = a;
      }
    }
    taken[pick] = true;
    seq.push_back(pick);
  }
  return seq;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("exhaustive fit of a linear utility recovers the weights") {
  const std::vector<double> w{3.0, -1.0, 2.0, 0.25, 1.5};
  const LinearUtility u(w);
  for (const char* kernel : {"shapley", "banzhaf", "beta:2,1", "shapley-binom"}) {
    const LinearSurrogate fit = fit_wls(u, WlsKernel::parse(kernel));
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(fit.theta[i] == doctest::Approx(w[i]).epsilon(1e-8));
    }
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.kernel_id == kernel);
  }
}

TEST_CASE("two-point hand example: constraint forces theta = [1.5, 0.5]") {
  // U(∅)=0, U({0})=1, U({1})=0, U(D)=2. With θ_0 + θ_1 = 2 the weighted
  // objective reduces to (1-θ_0)² + (θ_0-2)² for any symmetric kernel.
  const TabularUtility u(2, {0.0, 1.0, 0.0, 2.0});

  // oracle: dense scan over the single free variable
  double best_theta0 = 0.0, best_loss = 1e300;
  for (int i = 0; i <= 40000; ++i) {
    const double t0 = -2.0 + i * 1e-4;
    const double loss = (1.0 - t0) * (1.0 - t0) + (t0 - 2.0) * (t0 - 2.0);
    if (loss < best_loss) {
      best_loss = loss;
      best_theta0 = t0;
    }
  }
  CHECK(best_theta0 == doctest::Approx(1.5).epsilon(1e-3));

  const LinearSurrogate fit = fit_wls(u, WlsKernel::shapley());
  CHECK(fit.theta[0] == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(fit.theta[1] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("shapley-kernel fit equals exact shapley values (n = 8)") {
  Rng rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    const TabularUtility u = random_tabular(8, rng, -1.0, 2.0);
    const MemoizedUtility memo(u);
    const LinearSurrogate fit = fit_wls(memo, WlsKernel::shapley());
    const ValueAssignment shapley = exact_semivalue(memo, SemiValueScheme::shapley());
    CHECK(max_abs_diff(fit.theta, shapley.values) <= 1e-6);
  }
}

TEST_CASE("shapley-kernel recovery holds through n = 10") {
  Rng rng(311);
  for (std::size_t n = 3; n <= 10; ++n) {
    const TabularUtility u = random_tabular(n, rng);
    const MemoizedUtility memo(u);
    const LinearSurrogate fit = fit_wls(memo, WlsKernel::shapley());
    const ValueAssignment shapley = exact_semivalue(memo, SemiValueScheme::shapley());
    CHECK(max_abs_diff(fit.theta, shapley.values) <= 1e-6);
  }
}

TEST_CASE("every fit honors the efficiency constraint") {
  Rng rng(313);
  for (const char* kernel : {"shapley", "banzhaf", "beta:3,1", "shapley-binom"}) {
    for (int trial = 0; trial < 5; ++trial) {
      const TabularUtility u = random_tabular(7, rng, -2.0, 2.0);
      const LinearSurrogate fit = fit_wls(u, WlsKernel::parse(kernel));
      double sum = 0.0;
      for (double t : fit.theta) sum += t;
      const double expected = u.eval(SubsetMask::full(7)) - u.eval(SubsetMask(7));
      CHECK(std::abs(sum - expected) <= 1e-8);
    }
  }
}

TEST_CASE("the fit ignores constant offsets in the utility") {
  Rng rng(317);
  const TabularUtility base = random_tabular(6, rng);
  const FunctionUtility shifted(6, [&](const SubsetMask& s) {
    return base.eval(s) + 11.25;
  });
  const LinearSurrogate a = fit_wls(base, WlsKernel::shapley());
  const LinearSurrogate b = fit_wls(shifted, WlsKernel::shapley());
  CHECK(max_abs_diff(a.theta, b.theta) <= 1e-8);
}

TEST_CASE("myopic sequence examples") {
  LinearSurrogate s;
  s.theta = {0.2, 0.9, 0.5};
  CHECK(myopic_sequence(s) == std::vector<std::size_t>{1, 2, 0});

  const LinearUtility u(std::vector<double>{3, 1, 2});
  const LinearSurrogate fit = fit_wls(u, WlsKernel::shapley());
  CHECK(myopic_sequence(fit) == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("myopic sequence equals the simulated rollout on 100 random thetas") {
  Rng rng(331);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> theta(10);
    for (double& t : theta) t = rng.uniform(-1.0, 1.0);
    if (trial % 4 == 0) theta[3] = theta[7];  // exercise tie handling
    LinearSurrogate s;
    s.theta = theta;
    CHECK(myopic_sequence(s) == rollout(theta));
  }
}

TEST_CASE("sampled fits approach the exhaustive fit as m grows") {
  Rng rng(337);
  const TabularUtility u = random_tabular(8, rng);
  const MemoizedUtility memo(u);
  const LinearSurrogate exact = fit_wls(memo, WlsKernel::shapley());

  const std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::vector<std::vector<double>> gaps(sizes.size());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (std::size_t gi = 0; gi < sizes.size(); ++gi) {
      FitOptions opt;
      opt.samples = sizes[gi];
      opt.seed = seed;
      const LinearSurrogate fit = fit_wls(memo, WlsKernel::shapley(), opt);
      gaps[gi].push_back(max_abs_diff(fit.theta, exact.theta));
    }
  }
  const auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const double m0 = median(gaps[0]);
  const double m1 = median(gaps[1]);
  const double m2 = median(gaps[2]);
  CHECK(m1 <= m0);
  CHECK(m2 <= m1);
}

TEST_CASE("fit_wls input validation") {
  const LinearUtility tiny(std::vector<double>{1.0});
  CHECK_THROWS_AS(fit_wls(tiny, WlsKernel::shapley()), InvalidInput);

  const LinearUtility big(std::vector<double>(15, 1.0));
  CHECK_THROWS_AS(fit_wls(big, WlsKernel::shapley()), ResourceLimit);

  WlsKernel zero{"zero", [](std::size_t, std::size_t) { return 0.0; }};
  const LinearUtility u(std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(fit_wls(u, zero), InvalidInput);
  CHECK_THROWS_AS(WlsKernel::parse("unknown"), InvalidInput);
}
