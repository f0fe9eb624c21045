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

#include "dataval/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "dataval/errors.hpp"
#include "dataval/rng.hpp"

namespace dataval {

std::vector<double> pairwise_distances(const Dataset& train, const Dataset& valid) {
  if (train.dims() != valid.dims()) {
    throw InvalidInput("pairwise_distances: feature dimension mismatch");
  }
  const std::size_t n = train.rows();
  const std::size_t m = valid.rows();
  const std::size_t d = train.dims();
  std::vector<double> dist(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = train.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      const auto b = valid.row(j);
      double sq = 0.0;
      for (std::size_t f = 0; f < d; ++f) {
        const double diff = a[f] - b[f];
        sq += diff * diff;
      }
      dist[i * m + j] = std::sqrt(sq);
    }
  }
  return dist;
}

BipartiteGraph graph_at_threshold(const Dataset& train, const Dataset& valid,
                                  const std::vector<double>& distances, double tau) {
  const std::size_t n = train.rows();
  const std::size_t m = valid.rows();
  if (distances.size() != n * m) {
    throw InvalidInput("graph_at_threshold: distance matrix shape mismatch");
  }
  BipartiteGraph g;
  g.n_train = n;
  g.n_valid = m;
  g.threshold = tau;
  g.capacities.assign(m, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (distances[i * m + j] <= tau && train.label(i) == valid.label(j)) {
        g.edges.push_back({i, j, 1.0});
      }
    }
  }
  return g;
}

std::pair<BipartiteGraph, ThresholdSweepReport> learn_graph(
    const Dataset& train, const Dataset& valid, const UtilityFunction& accuracy,
    const LearnGraphOptions& opt) {
  const std::size_t n = train.rows();
  const std::size_t m = valid.rows();
  if (accuracy.population() != n) {
    throw InvalidInput("learn_graph: utility population must match train rows");
  }
  if (opt.subset_samples < 1) throw InvalidInput("learn_graph: K must be >= 1");
  if (opt.num_thresholds < 2) throw InvalidInput("learn_graph: N_tau must be >= 2");
  const std::size_t k =
      opt.subset_size == 0 ? (n + 1) / 2 : std::min(opt.subset_size, n);
  if (k < 1) throw InvalidInput("learn_graph: subset size must be >= 1");

  const std::vector<double> dist = pairwise_distances(train, valid);
  double lo = dist[0], hi = dist[0];
  for (double d : dist) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }

  ThresholdSweepReport report;
  if (hi > lo) {
    report.thresholds.resize(opt.num_thresholds);
    for (std::size_t t = 0; t < opt.num_thresholds; ++t) {
      report.thresholds[t] =
          lo + (hi - lo) * static_cast<double>(t) /
                   static_cast<double>(opt.num_thresholds - 1);
    }
  } else {
    report.thresholds.assign(1, lo);  // degenerate distance range
  }

  // K seeded subsets; accuracies computed once.
  Rng rng(opt.seed);
  const std::size_t K = opt.subset_samples;
  std::vector<double> acc(K);
  // per (subset, valid vertex): least distance to a same-label member
  std::vector<double> least(K * m, std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < K; ++s) {
    const std::vector<std::size_t> subset = rng.sample_indices(n, k);
    SubsetMask mask(n);
    for (std::size_t i : subset) mask.set(i);
    acc[s] = accuracy.eval(mask);
    for (std::size_t j = 0; j < m; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i : subset) {
        if (train.label(i) == valid.label(j)) best = std::min(best, dist[i * m + j]);
      }
      least[s * m + j] = best;
    }
  }

  report.errors.assign(report.thresholds.size(), 0.0);
  for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
    const double tau = report.thresholds[t];
    double err = 0.0;
    for (std::size_t s = 0; s < K; ++s) {
      std::size_t covered = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (least[s * m + j] <= tau) ++covered;
      }
      const double ratio = static_cast<double>(covered) / static_cast<double>(m);
      err += std::abs(ratio - acc[s]);
    }
    report.errors[t] = err / static_cast<double>(K);
  }

  report.chosen_index = 0;
  for (std::size_t t = 1; t < report.errors.size(); ++t) {
    if (report.errors[t] < report.errors[report.chosen_index]) report.chosen_index = t;
  }
  report.chosen = report.thresholds[report.chosen_index];

  return {graph_at_threshold(train, valid, dist, report.chosen), report};
}

double coverage_ratio(const BipartiteGraph& graph, const SubsetMask& selected) {
  if (selected.population() != graph.n_train) {
    throw InvalidInput("coverage_ratio: mask width must match n_train");
  }
  if (graph.n_valid == 0) return 0.0;
  std::vector<bool> covered(graph.n_valid, false);
  for (const BipartiteEdge& e : graph.edges) {
    if (selected.test(e.train)) covered[e.valid] = true;
  }
  std::size_t count = 0;
  for (bool c : covered)
    if (c) ++count;
  return static_cast<double>(count) / static_cast<double>(graph.n_valid);
}

GreedySelection greedy_select(const BipartiteGraph& graph) {
  graph.validate();
  const std::size_t n = graph.n_train;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const BipartiteEdge& e : graph.edges) adj[e.train].emplace_back(e.valid, e.weight);

  std::vector<double> load(graph.n_valid, 0.0);
  const auto gain_of = [&](std::size_t u) {
    double g = 0.0;
    for (const auto& [v, w] : adj[u]) {
      g += std::min(graph.capacities[v], load[v] + w) -
           std::min(graph.capacities[v], load[v]);
    }
    return g;
  };

  // Lazy greedy: stale cached gains are upper bounds under submodularity, so
  // refreshing only the queue head reproduces the naive argmax, including
  // smallest-index tie-breaks.
  struct Entry {
    double gain;
    std::size_t index;
    std::size_t round;
  };
  const auto worse = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.index > b.index;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
  for (std::size_t u = 0; u < n; ++u) queue.push({gain_of(u), u, 0});

  GreedySelection out;
  out.perm.reserve(n);
  out.gains.reserve(n);
  out.values.method_id = "bipartite";
  out.values.values.assign(n, 0.0);
  for (std::size_t step = 1; step <= n; ++step) {
    Entry top = queue.top();
    queue.pop();
    while (top.round != step) {
      top = {gain_of(top.index), top.index, step};
      queue.push(top);
      top = queue.top();
      queue.pop();
    }
    out.perm.push_back(top.index);
    out.gains.push_back(top.gain);
    out.values.values[top.index] = static_cast<double>(n - step);
    for (const auto& [v, w] : adj[top.index]) load[v] += w;
  }
  return out;
}

}  // namespace dataval
