// Copyright 2026 The nomaload Authors
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

// Command-line front end: generate deployments, solve them under a policy,
// sweep policy grids into CSV, and compare policies against a baseline.
//
// Exit codes: 0 solved to optimal (or the command succeeded), 2 infeasible,
// 3 iteration limit hit before convergence, 1 usage or I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nomaload/experiments.hpp"
#include "nomaload/lp.hpp"
#include "nomaload/scenario_gen.hpp"
#include "nomaload/sif.hpp"

namespace {

using namespace nomaload;
using nlohmann::json;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated list");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (std::uint64_t v : parse_seed_list(text)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated list");
  return out;
}

IterationMode parse_async(const std::string& mode) {
  if (mode == "off") return IterationMode::Synchronous;
  if (mode == "roundrobin") return IterationMode::AsyncRoundRobin;
  if (mode == "random") return IterationMode::AsyncRandom;
  throw CLI::ValidationError("--async must be off, roundrobin, or random");
}

int status_exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return 0;
    case SolveStatus::InfeasibleCap:
    case SolveStatus::InfeasibleDiverged:
      return 2;
    case SolveStatus::MaxItersHit:
      return 3;
  }
  return 1;
}

void write_trace(const SolveOutcome& out, const std::string& path) {
  std::ofstream trace(path);
  if (!trace) throw std::runtime_error("cannot open for writing: " + path);
  trace << "iter,residual";
  const std::size_t cells = out.load_history.empty()
                                ? 0
                                : out.load_history.front().size();
  for (std::size_t i = 0; i < cells; ++i) trace << ",load_" << i;
  trace << '\n';
  for (std::size_t t = 0; t < out.load_history.size(); ++t) {
    trace << t << ',';
    if (t == 0) {
      trace << "nan";  // no step has happened yet
    } else {
      trace << out.residual_history[t - 1];
    }
    for (double v : out.load_history[t]) trace << ',' << v;
    trace << '\n';
  }
}

json outcome_to_json(const SolveOutcome& out, const Scenario& scenario,
                     const std::string& policy) {
  json doc;
  doc["status"] = to_string(out.status);
  doc["policy"] = policy;
  doc["iterations"] = out.iterations;
  doc["loads"] = out.rho_star;
  doc["sum_load"] = metric("sum_load", out.rho_star);
  doc["max_load"] = metric("max_load", out.rho_star);
  if (out.status == SolveStatus::Optimal) {
    doc["rate_efficiency"] = rate_efficiency(scenario, out.rho_star);
    doc["alpha"] = out.alpha_star;
    doc["alpha_index"] = out.alpha_index_star;
    json cells = json::array();
    for (const auto& per_cell : out.clusters_star) {
      json list = json::array();
      for (const SelectedCluster& sc : per_cell) {
        json entry;
        entry["ues"] = sc.cluster.is_pair()
                           ? json::array({sc.cluster.first, sc.cluster.second})
                           : json::array({sc.cluster.first});
        entry["share"] = sc.share;
        entry["power"] = sc.cluster.is_pair()
                             ? json::array({sc.power_strong, sc.power_weak})
                             : json::array({sc.power_strong});
        list.push_back(std::move(entry));
      }
      cells.push_back(std::move(list));
    }
    doc["clusters"] = std::move(cells);
  }
  return doc;
}

struct GenArgs {
  std::uint64_t seed = 1;
  int ues = 70;
  int small_cells = 6;
  double load_limit = 1.0;
  double calibrate_target = 0.0;  // 0 means no calibration
  std::string out;
};

int run_gen(const GenArgs& args) {
  GenConfig cfg;
  cfg.seed = args.seed;
  cfg.num_ues = args.ues;
  cfg.num_small_cells = args.small_cells;
  cfg.load_limit = args.load_limit;
  Scenario scenario = generate(cfg);

  json meta;
  meta["seed"] = args.seed;
  meta["placement"] = "macro at origin, small cells on a half-radius ring";
  if (args.calibrate_target > 0.0) {
    const CalibrationResult cal =
        calibrate_demands(scenario, args.calibrate_target);
    scenario = cal.scenario;
    meta["demand_scale"] = cal.scale;
    meta["baseline_max_load"] = cal.achieved_max_load;
  }
  save_scenario(scenario, args.out, meta.dump());
  std::cout << "wrote " << args.out << ": " << scenario.num_cells()
            << " cells, " << scenario.num_ues() << " ues\n";
  return 0;
}

struct SolveArgs {
  std::string scenario_path;
  std::string policy = "oma";
  std::string alpha_grid;
  double load_limit = -1.0;  // negative means keep the scenario's value
  double epsilon = 1e-6;
  int max_iters = 500;
  std::string async_mode = "off";
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::string dump_lp;
};

int run_solve(const SolveArgs& args) {
  Scenario scenario = load_scenario(args.scenario_path);
  if (args.load_limit >= 0.0) scenario.load_limit = args.load_limit;

  std::vector<double> ftpc_grid = {0.2, 0.4, 0.6, 0.8};
  std::vector<double> ntt_grid = {0.1, 0.2, 0.3, 0.4};
  if (!args.alpha_grid.empty()) {
    const std::vector<double> grid = parse_double_list(args.alpha_grid);
    ftpc_grid = grid;
    ntt_grid = grid;
  }
  auto [clusters, power] =
      policy_setup(args.policy, scenario, ftpc_grid, ntt_grid);
  LoadSolver solver(scenario, std::move(clusters), std::move(power));

  IterationConfig cfg;
  cfg.mode = parse_async(args.async_mode);
  cfg.epsilon = args.epsilon;
  cfg.max_iters = args.max_iters;
  cfg.subset_seed = args.seed;
  const SolveOutcome outcome = solver.solve(cfg);

  const json doc = outcome_to_json(outcome, scenario, args.policy);
  if (args.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream f(args.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + args.out);
    f << doc.dump(2) << '\n';
    std::cout << to_string(outcome.status) << " in " << outcome.iterations
              << " iterations, wrote " << args.out << '\n';
  }
  if (!args.trace.empty()) write_trace(outcome, args.trace);
  if (!args.dump_lp.empty()) {
    std::ofstream f(args.dump_lp);
    if (!f) throw std::runtime_error("cannot open for writing: " + args.dump_lp);
    for (int i = 0; i < scenario.num_cells(); ++i) {
      const LoadSolver::BestResponse best = solver.cell_best(i, outcome.rho_star);
      const CellLp lp = build_cell_lp(i, solver.clusters(),
                                      solver.splits(i, best.candidate),
                                      outcome.rho_star, scenario);
      dump_tableau(lp, f);
      f << '\n';
    }
  }
  return status_exit_code(outcome.status);
}

struct SweepArgs {
  std::string seeds = "1";
  std::string ues = "70";
  std::string load_limits = "1.0";
  std::string policies = "oma,uniform,ftpc,ntt";
  std::string alpha_grid;
  int small_cells = 6;
  double epsilon = 1e-6;
  int max_iters = 500;
  std::string async_mode = "off";
  bool no_calibrate = false;
  bool timings = false;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  ExperimentSpec spec;
  spec.seeds = parse_seed_list(args.seeds);
  spec.ue_counts = parse_int_list(args.ues);
  spec.load_limits = parse_double_list(args.load_limits);
  spec.policies = parse_string_list(args.policies);
  spec.base.num_small_cells = args.small_cells;
  if (!args.alpha_grid.empty()) {
    const std::vector<double> grid = parse_double_list(args.alpha_grid);
    spec.ftpc_grid = grid;
    spec.ntt_grid = grid;
  }
  spec.calibrate = !args.no_calibrate;
  spec.iteration.mode = parse_async(args.async_mode);
  spec.iteration.epsilon = args.epsilon;
  spec.iteration.max_iters = args.max_iters;

  const std::vector<ResultRow> rows = run_experiment(spec);
  emit_csv(rows, args.out, args.timings);
  std::cout << "wrote " << rows.size() << " rows to " << args.out << '\n';
  return 0;
}

struct CompareArgs {
  std::string csv_path;
  std::string baseline = "oma";
  std::string out;
};

int run_compare(const CompareArgs& args) {
  const std::vector<ResultRow> rows = load_csv(args.csv_path);
  const std::vector<ComparisonRow> table =
      compare_to_baseline(rows, args.baseline);
  if (table.empty()) {
    std::cout << "no policies to compare against baseline \"" << args.baseline
              << "\"\n";
    return 0;
  }
  std::cout << "policy      scenarios  sum_load_red%  max_load_red%  "
               "rate_eff_imp%\n";
  char line[160];
  for (const ComparisonRow& c : table) {
    std::snprintf(line, sizeof(line), "%-10s %9d %14.2f %14.2f %14.2f\n",
                  c.policy.c_str(), c.scenarios,
                  c.mean_sum_load_reduction_pct, c.mean_max_load_reduction_pct,
                  c.mean_rate_eff_improvement_pct);
    std::cout << line;
  }
  if (!args.out.empty()) {
    std::ofstream f(args.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + args.out);
    f << "policy,scenarios,mean_sum_load_reduction_pct,"
         "mean_max_load_reduction_pct,mean_rate_eff_improvement_pct\n";
    char buf[64];
    for (const ComparisonRow& c : table) {
      f << c.policy << ',' << c.scenarios;
      const double vals[3] = {c.mean_sum_load_reduction_pct,
                              c.mean_max_load_reduction_pct,
                              c.mean_rate_eff_improvement_pct};
      for (double v : vals) {
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        f << ',' << buf;
      }
      f << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Globally optimal cell loads, clustering, and power allocation for "
      "load-coupled downlink networks"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a deployment and write it as a scenario JSON file");
  gen->add_option("--seed", gen_args.seed, "Random stream seed");
  gen->add_option("--ues", gen_args.ues, "Number of UEs");
  gen->add_option("--small-cells", gen_args.small_cells,
                  "Number of small cells around the macro cell");
  gen->add_option("--load-limit", gen_args.load_limit,
                  "Usable fraction of the resource grid, in (0, 1]");
  gen->add_option("--calibrate", gen_args.calibrate_target,
                  "Rescale demands so the singleton baseline peaks at this "
                  "max load");
  gen->add_option("--out", gen_args.out, "Output scenario path")->required();

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve one scenario under one policy, print or write the "
               "outcome JSON");
  solve->add_option("scenario", solve_args.scenario_path, "Scenario JSON file")
      ->required();
  solve->add_option("--policy", solve_args.policy,
                    "oma, uniform, ftpc, or ntt");
  solve->add_option("--alpha-grid", solve_args.alpha_grid,
                    "Comma-separated power-split parameters to search");
  solve->add_option("--load-limit", solve_args.load_limit,
                    "Override the scenario's load limit");
  solve->add_option("--epsilon", solve_args.epsilon,
                    "Convergence threshold on the load residual");
  solve->add_option("--max-iters", solve_args.max_iters,
                    "Iteration budget");
  solve->add_option("--async", solve_args.async_mode,
                    "off (all cells each round), roundrobin, or random");
  solve->add_option("--seed", solve_args.seed,
                    "Subset seed for --async random");
  solve->add_option("--out", solve_args.out, "Outcome JSON path");
  solve->add_option("--trace", solve_args.trace,
                    "Write per-iteration residual and loads as CSV");
  solve->add_option("--dump-lp", solve_args.dump_lp,
                    "Write each cell's final program as text");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a seed x UE-count x load-limit x policy grid into CSV");
  sweep->add_option("--seed", sweep_args.seeds, "Comma-separated seeds");
  sweep->add_option("--ues", sweep_args.ues, "Comma-separated UE counts");
  sweep->add_option("--load-limit", sweep_args.load_limits,
                    "Comma-separated load limits");
  sweep->add_option("--policy", sweep_args.policies,
                    "Comma-separated policies");
  sweep->add_option("--alpha-grid", sweep_args.alpha_grid,
                    "Grid for ftpc and ntt (must suit both when both sweep)");
  sweep->add_option("--small-cells", sweep_args.small_cells,
                    "Small cells per scenario");
  sweep->add_option("--epsilon", sweep_args.epsilon, "Convergence threshold");
  sweep->add_option("--max-iters", sweep_args.max_iters, "Iteration budget");
  sweep->add_option("--async", sweep_args.async_mode,
                    "off, roundrobin, or random");
  sweep->add_flag("--no-calibrate", sweep_args.no_calibrate,
                  "Keep raw demands instead of calibrating to the load limit");
  sweep->add_flag("--timings", sweep_args.timings,
                  "Include wall-clock times in the CSV");
  sweep->add_option("--out", sweep_args.out, "Output CSV path")->required();

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "Summarize a sweep CSV as mean gains over a baseline");
  compare->add_option("csv", compare_args.csv_path, "Sweep results CSV")
      ->required();
  compare->add_option("--baseline", compare_args.baseline,
                      "Baseline policy name");
  compare->add_option("--out", compare_args.out, "Comparison CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (compare->parsed()) return run_compare(compare_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
