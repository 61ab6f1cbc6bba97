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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nomaload/scenario_gen.hpp"
#include "nomaload/sif.hpp"

namespace nomaload {

/// Scalar summaries of a load vector: "sum_load" or "max_load". Unknown
/// names throw std::invalid_argument.
double metric(const std::string& name, const LoadVector& loads);

/// Demand delivered per consumed resource block, bits per second:
/// total demand / (rb_count * total load).
double rate_efficiency(const Scenario& scenario, const LoadVector& loads);

/// Cluster set and power policy for a named scheme: "oma" (singletons only),
/// "uniform", "ftpc", or "ntt" (pairs allowed). The grids apply to ftpc and
/// ntt respectively. Throws std::invalid_argument on unknown names.
std::pair<ClusterSet, PowerPolicy> policy_setup(
    const std::string& policy, const Scenario& scenario,
    const std::vector<double>& ftpc_grid, const std::vector<double>& ntt_grid);

/// One solved configuration.
struct ResultRow {
  std::uint64_t seed = 0;
  std::string policy;
  double load_limit = 1.0;
  int num_ues = 0;
  std::string status;
  double sum_load = 0.0;
  double max_load = 0.0;
  double rate_efficiency = 0.0;  // NaN unless status is "optimal"
  int iterations = 0;
  double wall_time_s = 0.0;      // measured, excluded from output by default
};

/// Writes rows as CSV. Without timings the bytes depend only on the rows, so
/// identical runs produce identical files; pass include_timings for profiling
/// output instead.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path,
              bool include_timings = false);

/// Reads a CSV produced by emit_csv (either column set). Throws
/// std::runtime_error on malformed input.
std::vector<ResultRow> load_csv(const std::string& path);

/// Full factorial sweep description. Scenarios are generated per
/// (seed, ue_count, load_limit) from `base`, optionally demand-calibrated so
/// the singleton baseline peaks at the load limit, then solved once per
/// policy. Rows come out in loop order: seed, ue_count, load_limit, policy.
struct ExperimentSpec {
  GenConfig base;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<int> ue_counts = {70};
  std::vector<double> load_limits = {1.0};
  std::vector<std::string> policies = {"oma", "uniform", "ftpc", "ntt"};
  std::vector<double> ftpc_grid = {0.2, 0.4, 0.6, 0.8};
  std::vector<double> ntt_grid = {0.1, 0.2, 0.3, 0.4};
  bool calibrate = true;
  double calibration_tol = 1e-3;
  IterationConfig iteration;
};

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// Mean percentage gains of each policy over the baseline, across the
/// (seed, load_limit, num_ues) groups where both solved to optimal.
struct ComparisonRow {
  std::string policy;
  int scenarios = 0;  // groups that entered the means
  double mean_sum_load_reduction_pct = 0.0;
  double mean_max_load_reduction_pct = 0.0;
  double mean_rate_eff_improvement_pct = 0.0;
};

std::vector<ComparisonRow> compare_to_baseline(
    const std::vector<ResultRow>& rows, const std::string& baseline);

}  // namespace nomaload
