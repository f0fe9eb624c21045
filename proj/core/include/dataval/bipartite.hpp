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
#include <utility>
#include <vector>

#include "dataval/coverage.hpp"
#include "dataval/dataset.hpp"
#include "dataval/utility.hpp"
#include "dataval/values.hpp"

namespace dataval {

// Euclidean distances, train x valid, row-major.
std::vector<double> pairwise_distances(const Dataset& train, const Dataset& valid);

// One row per candidate threshold of the structure-learning sweep; chosen
// attains the minimum error, ties toward the smallest threshold.
struct ThresholdSweepReport {
  std::vector<double> thresholds;
  std::vector<double> errors;  // mean |coverage ratio - accuracy| over the K subsets
  double chosen = 0.0;
  std::size_t chosen_index = 0;
};

struct LearnGraphOptions {
  std::size_t subset_samples = 50;   // K
  std::size_t num_thresholds = 20;   // N_τ
  std::size_t subset_size = 0;       // k; 0 means ceil(n_train / 2)
  std::uint64_t seed = 0;
};

// Unit-weight, unit-capacity graph at a fixed cutoff: edges are the
// same-label pairs with distance <= tau.
BipartiteGraph graph_at_threshold(const Dataset& train, const Dataset& valid,
                                  const std::vector<double>& distances, double tau);

// Feature-based structure learning: sweeps equally spaced thresholds over
// the distance range and keeps the one whose coverage ratios best match the
// model accuracies of K seeded random size-k subsets.
std::pair<BipartiteGraph, ThresholdSweepReport> learn_graph(
    const Dataset& train, const Dataset& valid, const UtilityFunction& accuracy,
    const LearnGraphOptions& opt = {});

// Fraction of validation vertices adjacent to the selected train vertices.
double coverage_ratio(const BipartiteGraph& graph, const SubsetMask& selected);

// Greedy coverage selection. gains holds the capacitated marginal gain at
// each step; values assigns v(i) = n - step(i) so earlier picks score higher.
struct GreedySelection {
  std::vector<std::size_t> perm;
  std::vector<double> gains;
  ValueAssignment values;
};

// Lazy-greedy evaluation order; output identical to the naive greedy that
// rescans every remaining vertex (ties toward the smallest index, exhausted
// vertices appended in ascending index).
GreedySelection greedy_select(const BipartiteGraph& graph);

}  // namespace dataval
