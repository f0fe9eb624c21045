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

#include "dataval/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "dataval/errors.hpp"

namespace dataval {

void BipartiteGraph::validate() const {
  if (capacities.size() != n_valid) {
    throw InvalidInput("BipartiteGraph: capacities length must equal n_valid");
  }
  for (double c : capacities) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw InvalidInput("BipartiteGraph: capacities must be positive and finite");
    }
  }
  for (const BipartiteEdge& e : edges) {
    if (e.train >= n_train || e.valid >= n_valid) {
      throw InvalidInput("BipartiteGraph: edge endpoint out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidInput("BipartiteGraph: edge weights must be positive and finite");
    }
  }
}

BipartiteGraph BipartiteGraph::unit(std::size_t n_train, std::size_t n_valid,
                                    const std::vector<std::vector<std::size_t>>& coverage_sets) {
  if (coverage_sets.size() != n_train) {
    throw InvalidInput("BipartiteGraph::unit: one coverage set per train vertex");
  }
  BipartiteGraph g;
  g.n_train = n_train;
  g.n_valid = n_valid;
  g.capacities.assign(n_valid, 1.0);
  for (std::size_t i = 0; i < n_train; ++i) {
    for (std::size_t j : coverage_sets[i]) {
      g.edges.push_back({i, j, 1.0});
    }
  }
  g.validate();
  return g;
}

BipartiteGraph BipartiteGraph::restrict_train(const std::vector<std::size_t>& keep) const {
  std::vector<std::size_t> where(n_train, n_train);
  for (std::size_t pos = 0; pos < keep.size(); ++pos) {
    if (keep[pos] >= n_train) throw InvalidInput("restrict_train: index out of range");
    where[keep[pos]] = pos;
  }
  BipartiteGraph g;
  g.n_train = keep.size();
  g.n_valid = n_valid;
  g.threshold = threshold;
  g.capacities = capacities;
  for (const BipartiteEdge& e : edges) {
    if (where[e.train] != n_train) {
      g.edges.push_back({where[e.train], e.valid, e.weight});
    }
  }
  return g;
}

std::vector<std::size_t> BipartiteGraph::train_degrees() const {
  std::vector<std::size_t> deg(n_train, 0);
  for (const BipartiteEdge& e : edges) ++deg[e.train];
  return deg;
}

CoverageUtility::CoverageUtility(BipartiteGraph graph) : graph_(std::move(graph)) {
  graph_.validate();
  adj_.assign(graph_.n_train, {});
  for (const BipartiteEdge& e : graph_.edges) {
    adj_[e.train].emplace_back(e.valid, e.weight);
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
}

double CoverageUtility::eval(const SubsetMask& s) const {
  require_population(s);
  thread_local std::vector<double> load;
  load.assign(graph_.n_valid, 0.0);
  s.for_each([&](std::size_t u) {
    for (const auto& [v, w] : adj_[u]) load[v] += w;
  });
  double total = 0.0;
  for (std::size_t v = 0; v < graph_.n_valid; ++v) {
    total += std::min(graph_.capacities[v], load[v]);
  }
  return total;
}

}  // namespace dataval
