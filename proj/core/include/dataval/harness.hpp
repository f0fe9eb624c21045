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
#include <map>
#include <string>
#include <vector>

#include "dataval/bipartite.hpp"
#include "dataval/curve.hpp"
#include "dataval/dataset.hpp"
#include "dataval/model.hpp"
#include "dataval/synthetic.hpp"
#include "dataval/values.hpp"

namespace dataval {

struct DatasetSource {
  enum class Kind { csv, gmm };
  Kind kind = Kind::gmm;
  std::string csv_path;
  GmmSpec gmm;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t valid = 0;
  std::size_t test = 0;
};

// Seeded shuffle split into consecutive train/valid/test blocks. The
// stratified variant deals classes round-robin so split compositions stay
// as balanced as the sizes allow.
struct SplitDatasets {
  Dataset train;
  Dataset valid;
  Dataset test;
};
SplitDatasets split_pool(const Dataset& pool, const SplitSizes& sizes, std::uint64_t seed);
SplitDatasets split_pool_stratified(const Dataset& pool, const SplitSizes& sizes,
                                    std::uint64_t seed);

// Full experiment description. Methods: dp | shapley | beta:α,β | banzhaf |
// loo | wls:<kernel> | bipartite | random. Run r uses seed base_seed + 10r.
struct ExperimentConfig {
  DatasetSource source;
  SplitSizes splits;
  std::vector<std::string> methods;
  std::size_t n_runs = 1;
  std::uint64_t base_seed = 10;

  // Valuation-utility evaluations allowed per method (distinct retrainings);
  // 0 lifts the cap. Exact methods declare their full cost up front and
  // refuse when it exceeds the budget; MC methods derive their sample count
  // from it unless mc_samples is set.
  std::uint64_t budget = 1000;
  std::size_t mc_samples = 0;
  std::string estimator = "auto";  // auto | exact | mc

  std::string valuation = "model";        // model | linear | cardinality
  std::string evaluation = "test-model";  // test-model | same
  bool stratified = false;                // class-balanced splits
  // Message-passing proportion applied to the valuation utility's view of
  // the train/valid features; curve evaluation keeps the original features.
  double lambda = 0.0;

  TrainerConfig trainer;
  LearnGraphOptions bipartite;  // seed field ignored; per-run seeds apply
  std::size_t dp_cap = 20;
  std::size_t semivalue_cap = 14;
  std::size_t threads = 1;

  void validate() const;
};

struct MethodRun {
  ValueAssignment values;
  std::vector<std::size_t> perm;
  SelectionCurve curve;
  std::uint64_t evaluations = 0;  // valuation evaluations consumed
};

struct RunResult {
  std::uint64_t seed = 0;
  std::map<std::string, MethodRun> methods;
};

struct MethodSummary {
  std::vector<double> mean_curve;
  std::vector<double> std_curve;
  double objective_mean = 0.0;
  double objective_std = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunResult> runs;
  std::map<std::string, MethodSummary> summary;
  double wall_seconds = 0.0;  // console diagnostic; never persisted
};

// Splits the pool per run, computes values per method, evaluates each
// ranking's selection curve, aggregates mean/std across runs. Failures
// carry the run index and method.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Directory layout: config.json, runs/<r>/<method>.json,
// curves/<method>.csv (k,mean,std), summary.json. Output bytes are a pure
// function of (config, base seed).
void write_experiment(const ExperimentResult& result, const std::string& out_dir);
ExperimentResult read_experiment(const std::string& out_dir);

// Per-method distance to the exact sequential optimum.
struct GapReport {
  std::map<std::string, std::vector<double>> per_k;  // dp mean curve - method mean curve
  std::map<std::string, double> mean_gap;
};
GapReport gap_report(const ExperimentResult& result);
void write_gap_report_csv(const GapReport& report, const std::string& path);
void write_gap_report_json(const GapReport& report, const std::string& path);

std::string experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const std::string& text);
ExperimentConfig experiment_config_from_json_file(const std::string& path);

// Curvature sweep: per lambda, message-pass the splits, learn the coverage
// graph, measure curvature on a seeded degree-positive probe of its train
// side, and run the selection experiment.
struct SweepConfig {
  ExperimentConfig base;
  std::vector<double> lambdas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::size_t curvature_probe = 12;
};

struct SweepRow {
  double lambda = 0.0;
  double curvature = 0.0;
  std::map<std::string, double> objective_mean;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

SweepReport curvature_sweep(const SweepConfig& cfg);
void write_sweep_csv(const SweepReport& report, const std::string& path);
void write_sweep_json(const SweepReport& report, const std::string& path);
SweepConfig sweep_config_from_json_file(const std::string& path);

// "beta:2,1" -> "beta-2_1"; keeps method file names filesystem-safe.
std::string sanitize_method_name(const std::string& method);

}  // namespace dataval
