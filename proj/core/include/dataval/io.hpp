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

#include <string>

#include "dataval/bipartite.hpp"
#include "dataval/coverage.hpp"
#include "dataval/curve.hpp"
#include "dataval/dataset.hpp"
#include "dataval/dp.hpp"
#include "dataval/surrogate.hpp"
#include "dataval/values.hpp"

namespace dataval {

// Shortest round-trip decimal form; identical input bits give identical text.
std::string format_double(double v);

// Dataset CSV: header f0,...,f{d-1},label; label integer.
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const Dataset& data, const std::string& path);

// ValueAssignment JSON: {"method": string, "values": [...]}.
ValueAssignment read_values_json(const std::string& path);
void write_values_json(const ValueAssignment& values, const std::string& path);

// SelectionCurve CSV: columns k,utility.
SelectionCurve read_curve_csv(const std::string& path);
void write_curve_csv(const SelectionCurve& curve, const std::string& path);

// BipartiteGraph JSON:
// {"n_train", "n_valid", "threshold", "edges": [[i,j,w]...], "capacities": [...]}.
BipartiteGraph read_graph_json(const std::string& path);
void write_graph_json(const BipartiteGraph& graph, const std::string& path);

// DpSolution JSON: {"perm": [...], "optimal_values": [...], "objective": real}.
void write_dp_json(const DpSolution& solution, const std::string& path);

// Surrogate JSON: {"theta": [...], "kernel": string, "residual": real}.
void write_surrogate_json(const LinearSurrogate& surrogate, const std::string& path);

// Threshold sweep CSV: columns tau,error.
void write_threshold_sweep_csv(const ThresholdSweepReport& report, const std::string& path);

}  // namespace dataval
