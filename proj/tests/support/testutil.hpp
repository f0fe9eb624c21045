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

// Test-only utilities and independent oracles. Everything here stays
// separate from the implementation paths it is used to check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "dataval/coverage.hpp"
#include "dataval/rng.hpp"
#include "dataval/subset.hpp"
#include "dataval/utility.hpp"

namespace dataval::testing {

// Arbitrary set function from a lambda.
class FunctionUtility final : public UtilityFunction {
 public:
  FunctionUtility(std::size_t n, std::function<double(const SubsetMask&)> fn)
      : n_(n), fn_(std::move(fn)) {}

  double eval(const SubsetMask& s) const override {
    require_population(s);
    return fn_(s);
  }
  std::size_t population() const override { return n_; }

 private:
  std::size_t n_;
  std::function<double(const SubsetMask&)> fn_;
};

// Explicit table over all 2^n masks (n <= 24).
class TabularUtility final : public UtilityFunction {
 public:
  TabularUtility(std::size_t n, std::vector<double> table)
      : n_(n), table_(std::move(table)) {}

  double eval(const SubsetMask& s) const override {
    require_population(s);
    return table_[static_cast<std::size_t>(s.low_bits())];
  }
  std::size_t population() const override { return n_; }

 private:
  std::size_t n_;
  std::vector<double> table_;
};

inline TabularUtility random_tabular(std::size_t n, Rng& rng, double lo = 0.0,
                                     double hi = 1.0) {
  std::vector<double> table(std::size_t{1} << n);
  for (double& v : table) v = rng.uniform(lo, hi);
  return TabularUtility(n, std::move(table));
}

// Three-player glove game: U(S) = min(|S ∩ {0}|, |S ∩ {1,2}|).
inline FunctionUtility glove_utility() {
  return FunctionUtility(3, [](const SubsetMask& s) {
    const int left = s.test(0) ? 1 : 0;
    const int right = (s.test(1) ? 1 : 0) + (s.test(2) ? 1 : 0);
    return static_cast<double>(std::min(left, right));
  });
}

// Exact Shapley values by full permutation enumeration (independent of the
// subset-enumeration implementation path).
inline std::vector<double> shapley_by_permutations(const UtilityFunction& u) {
  const std::size_t n = u.population();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> acc(n, 0.0);
  std::size_t count = 0;
  do {
    SubsetMask prefix(n);
    double prev = u.eval(prefix);
    for (std::size_t j = 0; j < n; ++j) {
      prefix.set(perm[j]);
      const double cur = u.eval(prefix);
      acc[perm[j]] += cur - prev;
      prev = cur;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& v : acc) v /= static_cast<double>(count);
  return acc;
}

// Random unit-weight unit-capacity bipartite graph; optionally guarantees
// every train vertex at least one edge.
inline BipartiteGraph random_unit_graph(std::size_t n_train, std::size_t n_valid,
                                        double edge_prob, Rng& rng,
                                        bool min_degree_one = true) {
  std::vector<std::vector<std::size_t>> sets(n_train);
  for (std::size_t i = 0; i < n_train; ++i) {
    for (std::size_t j = 0; j < n_valid; ++j) {
      if (rng.uniform() < edge_prob) sets[i].push_back(j);
    }
    if (min_degree_one && sets[i].empty()) {
      sets[i].push_back(rng.below(n_valid));
    }
  }
  return BipartiteGraph::unit(n_train, n_valid, sets);
}

// Plain set-union coverage count, the oracle for unit graphs.
inline std::size_t union_coverage(const std::vector<std::vector<std::size_t>>& sets,
                                  const SubsetMask& mask) {
  std::set<std::size_t> covered;
  mask.for_each([&](std::size_t i) {
    covered.insert(sets[i].begin(), sets[i].end());
  });
  return covered.size();
}

inline std::vector<std::vector<std::size_t>> coverage_sets_of(const BipartiteGraph& g) {
  std::vector<std::vector<std::size_t>> sets(g.n_train);
  for (const BipartiteEdge& e : g.edges) sets[e.train].push_back(e.valid);
  return sets;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ranks = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

}  // namespace dataval::testing
