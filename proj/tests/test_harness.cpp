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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dataval/errors.hpp"
#include "dataval/harness.hpp"
#include "dataval/io.hpp"
#include "support/testutil.hpp"

using namespace dataval;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.source.kind = DatasetSource::Kind::gmm;
  cfg.source.gmm = {30, 3, 3, 4.0};
  cfg.splits = {8, 20, 30};
  cfg.methods = {"random"};
  cfg.n_runs = 1;
  cfg.base_seed = 10;
  cfg.budget = 0;
  cfg.trainer.iterations = 60;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_dirs_equal(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (entry.is_regular_file()) rel.push_back(fs::relative(entry.path(), a));
  }
  std::sort(rel.begin(), rel.end());
  REQUIRE(!rel.empty());
  for (const fs::path& r : rel) {
    CHECK_MESSAGE(slurp(a / r) == slurp(b / r), "file differs: ", r.string());
  }
}

}  // namespace

TEST_CASE("random method over the cardinality utility gives the 1..n curve") {
  ExperimentConfig cfg = tiny_config();
  cfg.valuation = "cardinality";
  cfg.evaluation = "same";
  cfg.splits = {6, 1, 0};
  const ExperimentResult result = run_experiment(cfg);
  const MethodSummary& s = result.summary.at("random");
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(s.mean_curve[k] == static_cast<double>(k + 1));
  }
  CHECK(s.objective_mean == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("dp and shapley coincide on linear valuation utilities") {
  ExperimentConfig cfg = tiny_config();
  cfg.valuation = "linear";
  cfg.evaluation = "same";
  cfg.methods = {"dp", "shapley", "banzhaf", "loo", "wls:shapley"};
  cfg.splits = {9, 1, 0};
  cfg.n_runs = 3;
  cfg.estimator = "exact";
  const ExperimentResult result = run_experiment(cfg);
  const MethodSummary& dp = result.summary.at("dp");
  for (const char* m : {"shapley", "banzhaf", "loo", "wls:shapley"}) {
    const MethodSummary& other = result.summary.at(m);
    for (std::size_t k = 0; k < 9; ++k) {
      CHECK(other.mean_curve[k] == dp.mean_curve[k]);
    }
    CHECK(other.objective_mean == dp.objective_mean);
  }
}

TEST_CASE("dp never trails any method on a shared deterministic utility") {
  ExperimentConfig cfg = tiny_config();
  cfg.evaluation = "same";
  cfg.methods = {"dp", "shapley", "banzhaf", "loo", "random", "bipartite"};
  cfg.splits = {8, 16, 0};
  cfg.n_runs = 2;
  cfg.estimator = "exact";
  cfg.bipartite.subset_samples = 10;
  cfg.bipartite.num_thresholds = 8;
  const ExperimentResult result = run_experiment(cfg);
  for (const RunResult& run : result.runs) {
    const double dp_obj = run.methods.at("dp").curve.objective;
    for (const auto& [method, mr] : run.methods) {
      CHECK(dp_obj >= mr.curve.objective - 1e-12);
    }
  }
}

TEST_CASE("per-run seeds follow the base_seed + 10r convention") {
  ExperimentConfig cfg = tiny_config();
  cfg.n_runs = 3;
  cfg.base_seed = 10;
  const ExperimentResult result = run_experiment(cfg);
  REQUIRE(result.runs.size() == 3);
  CHECK(result.runs[0].seed == 10);
  CHECK(result.runs[1].seed == 20);
  CHECK(result.runs[2].seed == 30);
}

TEST_CASE("persisted outputs are byte-identical across reruns") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {"random", "loo"};
  cfg.n_runs = 2;
  const fs::path dir1 = fs::temp_directory_path() / "dataval_exp1";
  const fs::path dir2 = fs::temp_directory_path() / "dataval_exp2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  write_experiment(run_experiment(cfg), dir1.string());
  write_experiment(run_experiment(cfg), dir2.string());
  check_dirs_equal(dir1, dir2);
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("summary mean/std reproduce from the persisted per-run curves") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {"loo", "random"};
  cfg.n_runs = 4;
  const ExperimentResult result = run_experiment(cfg);
  const fs::path dir = fs::temp_directory_path() / "dataval_exp_agg";
  fs::remove_all(dir);
  write_experiment(result, dir.string());
  const ExperimentResult loaded = read_experiment(dir.string());
  fs::remove_all(dir);

  for (const auto& [method, summary] : result.summary) {
    const std::size_t n = summary.mean_curve.size();
    for (std::size_t k = 0; k < n; ++k) {
      double mean = 0.0;
      for (const RunResult& run : loaded.runs) {
        mean += run.methods.at(method).curve.points[k].second;
      }
      mean /= static_cast<double>(loaded.runs.size());
      CHECK(std::abs(mean - summary.mean_curve[k]) <= 1e-12);
      double var = 0.0;
      for (const RunResult& run : loaded.runs) {
        const double dev = run.methods.at(method).curve.points[k].second - mean;
        var += dev * dev;
      }
      const double sd = std::sqrt(var / static_cast<double>(loaded.runs.size() - 1));
      CHECK(std::abs(sd - summary.std_curve[k]) <= 1e-12);
    }
  }
}

TEST_CASE("gap report: dp row is zero, linear gaps vanish, random stays nonnegative") {
  ExperimentConfig cfg = tiny_config();
  cfg.valuation = "linear";
  cfg.evaluation = "same";
  cfg.methods = {"dp", "shapley", "random"};
  cfg.splits = {8, 1, 0};
  cfg.n_runs = 2;
  cfg.estimator = "exact";
  const ExperimentResult result = run_experiment(cfg);
  const GapReport gaps = gap_report(result);
  for (double g : gaps.per_k.at("dp")) CHECK(g == 0.0);
  CHECK(gaps.mean_gap.at("dp") == 0.0);
  for (double g : gaps.per_k.at("shapley")) CHECK(g == 0.0);
  CHECK(gaps.mean_gap.at("random") >= 0.0);

  ExperimentResult no_dp = result;
  no_dp.summary.erase("dp");
  CHECK_THROWS_AS(gap_report(no_dp), InvalidInput);
}

TEST_CASE("config validation rejects bad setups") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {};
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);

  cfg = tiny_config();
  cfg.methods = {"unknown-method"};
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);

  cfg = tiny_config();
  cfg.methods = {"dp"};
  cfg.splits.train = 25;  // above the dp cap
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);

  cfg = tiny_config();
  cfg.splits = {80, 20, 30};  // more rows than the pool provides
  CHECK_THROWS_AS(run_experiment(cfg), InvalidInput);

  cfg = tiny_config();
  cfg.lambda = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
}

TEST_CASE("exact methods refuse budgets below their declared cost") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {"dp"};
  cfg.splits = {12, 10, 10};
  cfg.budget = 1000;  // 2^12 = 4096 > 1000
  CHECK_THROWS_AS(run_experiment(cfg), ResourceLimit);
  cfg.budget = 5000;
  CHECK_NOTHROW(run_experiment(cfg));
}

TEST_CASE("config json round trip preserves every field") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {"dp", "beta:2,1", "wls:shapley"};
  cfg.lambda = 0.25;
  cfg.mc_samples = 77;
  cfg.bipartite.subset_samples = 13;
  const ExperimentConfig back = experiment_config_from_json(experiment_config_to_json(cfg));
  CHECK(back.methods == cfg.methods);
  CHECK(back.splits.train == cfg.splits.train);
  CHECK(back.splits.test == cfg.splits.test);
  CHECK(back.lambda == cfg.lambda);
  CHECK(back.mc_samples == cfg.mc_samples);
  CHECK(back.bipartite.subset_samples == cfg.bipartite.subset_samples);
  CHECK(back.source.gmm.separation == cfg.source.gmm.separation);
  CHECK(back.trainer.iterations == cfg.trainer.iterations);
}

TEST_CASE("method file names are sanitized") {
  CHECK(sanitize_method_name("beta:2,1") == "beta-2_1");
  CHECK(sanitize_method_name("wls:shapley") == "wls-shapley");
  CHECK(sanitize_method_name("dp") == "dp");
}

TEST_CASE("parallel runs reproduce the single-threaded experiment") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {"loo", "random"};
  cfg.n_runs = 4;
  ExperimentConfig par = cfg;
  par.threads = 4;
  const ExperimentResult serial = run_experiment(cfg);
  const ExperimentResult parallel = run_experiment(par);
  for (const auto& [method, summary] : serial.summary) {
    CHECK(parallel.summary.at(method).mean_curve == summary.mean_curve);
    CHECK(parallel.summary.at(method).objective_mean == summary.objective_mean);
  }
}

TEST_CASE("sweep at lambda zero matches the plain experiment") {
  SweepConfig sweep;
  sweep.base = tiny_config();
  sweep.base.methods = {"loo"};
  sweep.base.splits = {8, 16, 20};
  sweep.base.bipartite.subset_samples = 10;
  sweep.base.bipartite.num_thresholds = 8;
  sweep.lambdas = {0.0, 0.5};
  sweep.curvature_probe = 5;
  const SweepReport report = curvature_sweep(sweep);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].lambda == 0.0);

  const ExperimentResult plain = run_experiment(sweep.base);
  CHECK(report.rows[0].objective_mean.at("loo") ==
        plain.summary.at("loo").objective_mean);
  for (const SweepRow& row : report.rows) {
    CHECK(row.curvature >= 0.0);
    CHECK(row.curvature <= 1.0);
  }
}
