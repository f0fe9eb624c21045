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

#include "dataval/utility.hpp"

namespace dataval {

struct BipartiteEdge {
  std::size_t train = 0;
  std::size_t valid = 0;
  double weight = 1.0;
};

// Weighted train -> validation edge set with per-validation-vertex
// capacities. `threshold` records the distance cutoff used when the graph
// was learned from features.
struct BipartiteGraph {
  std::size_t n_train = 0;
  std::size_t n_valid = 0;
  double threshold = 0.0;
  std::vector<BipartiteEdge> edges;
  std::vector<double> capacities;  // length n_valid, all positive

  void validate() const;

  // Unit-weight graph from coverage sets; capacities default to 1.
  static BipartiteGraph unit(std::size_t n_train, std::size_t n_valid,
                             const std::vector<std::vector<std::size_t>>& coverage_sets);

  // Train-side restriction: keeps the given train vertices (re-indexed in
  // the given order) and every validation vertex.
  BipartiteGraph restrict_train(const std::vector<std::size_t>& keep) const;

  std::vector<std::size_t> train_degrees() const;
};

// Capacitated coverage utility Û(S) = Σ_v min{c_v, Σ_{u∈S} w_uv}.
// With unit weights and capacities this is plain set coverage.
class CoverageUtility final : public UtilityFunction {
 public:
  explicit CoverageUtility(BipartiteGraph graph);

  double eval(const SubsetMask& s) const override;
  std::size_t population() const override { return graph_.n_train; }

  const BipartiteGraph& graph() const { return graph_; }
  const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency() const {
    return adj_;
  }

 private:
  BipartiteGraph graph_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;  // train -> (valid, w)
};

}  // namespace dataval
