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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "dataval/bipartite.hpp"
#include "dataval/curvature.hpp"
#include "dataval/dp.hpp"
#include "dataval/errors.hpp"
#include "dataval/harness.hpp"
#include "dataval/io.hpp"
#include "dataval/memoize.hpp"
#include "dataval/model.hpp"
#include "dataval/semivalues.hpp"
#include "dataval/surrogate.hpp"
#include "dataval/synthetic.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dataval;

struct CommonArgs {
  std::uint64_t seed = 10;
  std::string out;
  std::string config;
  std::size_t threads = 0;  // 0 keeps the config's value
};

struct SplitArgs {
  std::string data;
  std::size_t train = 0;
  std::size_t valid = 0;
  std::size_t test = 0;
};

void add_split_options(CLI::App* cmd, SplitArgs& args, bool need_test) {
  cmd->add_option("--data", args.data, "dataset CSV path")->required();
  cmd->add_option("--train", args.train, "training split size")->required();
  cmd->add_option("--valid", args.valid, "validation split size")->required();
  auto* test = cmd->add_option("--test", args.test, "test split size");
  if (need_test) test->required();
}

SplitDatasets load_and_split(const SplitArgs& args, std::uint64_t seed) {
  const Dataset pool = read_dataset_csv(args.data);
  return split_pool(pool, {args.train, args.valid, args.test}, seed);
}

void write_curvature_json(const CurvatureReport& report, const std::string& path) {
  std::string text = "{\n  \"c\": " + format_double(report.c) +
                     ",\n  \"argmin_index\": " + std::to_string(report.argmin_index) +
                     ",\n  \"ratios\": [";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    if (i) text += ", ";
    text += format_double(report.ratios[i]);
  }
  text += "]\n}\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << text;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"data valuation and sequential selection toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonArgs common;
  app.add_option("--seed", common.seed, "base random seed");
  app.add_option("--out", common.out, "output file or directory");
  app.add_option("--config", common.config, "JSON config file");
  app.add_option("--threads", common.threads, "worker threads");

  // generate
  GmmSpec gmm;
  CLI::App* generate = app.add_subcommand("generate", "sample a GMM dataset to CSV");
  generate->add_option("--per-class", gmm.n_per_class, "rows per class");
  generate->add_option("--classes", gmm.classes, "number of classes");
  generate->add_option("--dims", gmm.dims, "feature dimensions");
  generate->add_option("--separation", gmm.separation, "distance between class means");

  // value
  SplitArgs value_split;
  std::string value_method = "shapley";
  std::string value_estimator = "auto";
  std::uint64_t value_budget = 1000;
  std::size_t value_samples = 0;
  TrainerConfig trainer;
  CLI::App* value = app.add_subcommand("value", "compute data values on a dataset");
  add_split_options(value, value_split, false);
  value->add_option("--method", value_method,
                    "shapley | beta:a,b | banzhaf | loo | wls:<kernel>");
  value->add_option("--estimator", value_estimator, "auto | exact | mc");
  value->add_option("--budget", value_budget, "utility evaluation budget (0 = unlimited)");
  value->add_option("--samples", value_samples, "explicit MC sample count");
  value->add_option("--iterations", trainer.iterations, "trainer iterations");

  // dp
  SplitArgs dp_split;
  std::size_t dp_cap = 20;
  CLI::App* dp_cmd = app.add_subcommand("dp", "exact optimal selection by dynamic programming");
  add_split_options(dp_cmd, dp_split, false);
  dp_cmd->add_option("--cap", dp_cap, "exact-population cap (hard max 24)");
  dp_cmd->add_option("--iterations", trainer.iterations, "trainer iterations");

  // select
  SplitArgs select_split;
  std::string select_values;
  CLI::App* select = app.add_subcommand("select", "evaluate a ranking's selection curve");
  add_split_options(select, select_split, true);
  select->add_option("--values", select_values, "values JSON path")->required();
  select->add_option("--iterations", trainer.iterations, "trainer iterations");

  // bipartite
  SplitArgs bip_split;
  LearnGraphOptions bip_opts;
  CLI::App* bipartite =
      app.add_subcommand("bipartite", "learn a coverage graph and select greedily");
  add_split_options(bipartite, bip_split, false);
  bipartite->add_option("--subset-samples", bip_opts.subset_samples, "K random subsets");
  bipartite->add_option("--thresholds", bip_opts.num_thresholds, "N_tau sweep points");
  bipartite->add_option("--subset-size", bip_opts.subset_size,
                        "sampled subset size k (0 = half of train)");
  bipartite->add_option("--iterations", trainer.iterations, "trainer iterations");

  // curvature
  std::string curvature_graph;
  SplitArgs curv_split;
  CLI::App* curvature_cmd =
      app.add_subcommand("curvature", "curvature report of a utility");
  curvature_cmd->add_option("--graph", curvature_graph, "coverage graph JSON");
  curvature_cmd->add_option("--data", curv_split.data, "dataset CSV (model utility)");
  curvature_cmd->add_option("--train", curv_split.train, "training split size");
  curvature_cmd->add_option("--valid", curv_split.valid, "validation split size");
  curvature_cmd->add_option("--iterations", trainer.iterations, "trainer iterations");

  // sweep / run / report
  CLI::App* sweep = app.add_subcommand("sweep", "curvature sweep over message passing");
  CLI::App* run = app.add_subcommand("run", "run a full selection experiment");
  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "gap-to-optimal report for an experiment");
  report->add_option("--in", report_in, "experiment output directory")->required();

  app.parse(argc, argv);

  const auto require_out = [&]() -> const std::string& {
    if (common.out.empty()) throw InvalidInput("--out is required for this command");
    return common.out;
  };

  if (generate->parsed()) {
    write_dataset_csv(generate_gmm(gmm, common.seed), require_out());
    return 0;
  }

  if (value->parsed()) {
    const SplitDatasets splits = load_and_split(value_split, common.seed);
    const ModelUtility utility(splits.train, splits.valid, trainer);
    const CountingUtility budgeted(utility, value_budget);
    const MemoizedUtility memo(budgeted);
    const std::size_t n = utility.population();

    ValueAssignment values;
    if (value_method.rfind("wls:", 0) == 0) {
      const WlsKernel kernel = WlsKernel::parse(value_method.substr(4));
      FitOptions fit;
      fit.seed = common.seed;
      const bool exhaustive = value_estimator != "mc" && n <= 14 &&
                              (value_budget == 0 ||
                               (std::uint64_t{1} << n) <= value_budget);
      if (!exhaustive) {
        fit.samples = value_samples != 0 ? value_samples
                                         : std::max<std::uint64_t>(1, value_budget);
      }
      const LinearSurrogate surrogate = fit_wls(memo, kernel, fit);
      values.method_id = value_method;
      values.values = surrogate.theta;
    } else {
      const SemiValueScheme scheme = SemiValueScheme::parse(value_method);
      const bool exact = scheme.kind == SemiValueScheme::Kind::loo ||
                         value_estimator == "exact" ||
                         (value_estimator == "auto" && n <= 14 &&
                          (value_budget == 0 ||
                           (std::uint64_t{1} << n) <= value_budget));
      if (exact) {
        values = exact_semivalue(memo, scheme, {14});
      } else {
        McOptions mc;
        mc.seed = common.seed;
        mc.threads = std::max<std::size_t>(1, common.threads);
        const std::size_t per_sample =
            scheme.kind == SemiValueScheme::Kind::banzhaf ? 2 * n : n + 1;
        mc.samples = value_samples != 0
                         ? value_samples
                         : std::max<std::uint64_t>(1, value_budget / per_sample);
        values = mc_semivalue(memo, scheme, mc).values;
      }
    }
    write_values_json(values, require_out());
    return 0;
  }

  if (dp_cmd->parsed()) {
    const SplitDatasets splits = load_and_split(dp_split, common.seed);
    const ModelUtility utility(splits.train, splits.valid, trainer);
    const MemoizedUtility memo(utility);
    const DpSolution solution =
        solve_dp(memo, {dp_cap, std::max<std::size_t>(1, common.threads)});
    write_dp_json(solution, require_out());
    return 0;
  }

  if (select->parsed()) {
    const SplitDatasets splits = load_and_split(select_split, common.seed);
    const ValueAssignment values = read_values_json(select_values);
    const ModelUtility test_utility(splits.train, splits.test, trainer);
    const MemoizedUtility memo(test_utility);
    write_curve_csv(selection_curve(rank_by_value(values), memo), require_out());
    return 0;
  }

  if (bipartite->parsed()) {
    const SplitDatasets splits = load_and_split(bip_split, common.seed);
    const ModelUtility utility(splits.train, splits.valid, trainer);
    const MemoizedUtility memo(utility);
    bip_opts.seed = common.seed;
    const auto [graph, sweep_report] =
        learn_graph(splits.train, splits.valid, memo, bip_opts);
    const GreedySelection selection = greedy_select(graph);

    const fs::path dir(require_out());
    fs::create_directories(dir);
    write_graph_json(graph, (dir / "graph.json").string());
    write_threshold_sweep_csv(sweep_report, (dir / "sweep.csv").string());
    write_values_json(selection.values, (dir / "values.json").string());
    if (splits.test.rows() > 0) {
      const ModelUtility test_utility(splits.train, splits.test, trainer);
      const MemoizedUtility test_memo(test_utility);
      write_curve_csv(selection_curve(selection.perm, test_memo),
                      (dir / "curve.csv").string());
    }
    return 0;
  }

  if (curvature_cmd->parsed()) {
    CurvatureReport result;
    if (!curvature_graph.empty()) {
      result = curvature(CoverageUtility(read_graph_json(curvature_graph)));
    } else if (!curv_split.data.empty()) {
      const SplitDatasets splits = load_and_split(curv_split, common.seed);
      const ModelUtility utility(splits.train, splits.valid, trainer);
      const MemoizedUtility memo(utility);
      result = curvature(memo);
    } else {
      throw InvalidInput("curvature: pass --graph or --data with splits");
    }
    write_curvature_json(result, require_out());
    return 0;
  }

  if (sweep->parsed()) {
    if (common.config.empty()) throw InvalidInput("sweep: --config is required");
    SweepConfig cfg = sweep_config_from_json_file(common.config);
    if (common.threads != 0) cfg.base.threads = common.threads;
    const SweepReport result = curvature_sweep(cfg);
    const fs::path dir(require_out());
    fs::create_directories(dir);
    write_sweep_csv(result, (dir / "sweep.csv").string());
    write_sweep_json(result, (dir / "sweep.json").string());
    return 0;
  }

  if (run->parsed()) {
    if (common.config.empty()) throw InvalidInput("run: --config is required");
    ExperimentConfig cfg = experiment_config_from_json_file(common.config);
    if (common.threads != 0) cfg.threads = common.threads;
    const ExperimentResult result = run_experiment(cfg);
    write_experiment(result, require_out());
    std::fprintf(stderr, "completed %zu runs in %.2fs\n", result.runs.size(),
                 result.wall_seconds);
    return 0;
  }

  if (report->parsed()) {
    const ExperimentResult result = read_experiment(report_in);
    const GapReport gaps = gap_report(result);
    const fs::path dir(common.out.empty() ? fs::path(report_in) : fs::path(common.out));
    fs::create_directories(dir);
    write_gap_report_csv(gaps, (dir / "gaps.csv").string());
    write_gap_report_json(gaps, (dir / "gaps.json").string());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CLI::ParseError& e) {
    CLI::App app;
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ResourceLimit& e) {
    std::fprintf(stderr, "resource limit: %s\n", e.what());
    return 3;
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected failure: %s\n", e.what());
    return 4;
  }
}
