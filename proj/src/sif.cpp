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

#include "nomaload/sif.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace nomaload {

namespace {

constexpr double kShareFloor = 1e-9;   // shares below this do not count
constexpr double kCapSlack = 1e-12;    // dust allowance on limit comparisons

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::InfeasibleCap:
      return "infeasible_cap";
    case SolveStatus::InfeasibleDiverged:
      return "infeasible_diverged";
    case SolveStatus::MaxItersHit:
      return "max_iters_hit";
  }
  return "unknown";
}

LoadSolver::LoadSolver(Scenario scenario, ClusterSet clusters,
                       PowerPolicy policy)
    : scenario_(std::move(scenario)),
      clusters_(std::move(clusters)),
      policy_(std::move(policy)) {
  if (clusters_.by_cell.size() !=
      static_cast<std::size_t>(scenario_.num_cells())) {
    throw std::invalid_argument("cluster set does not match the scenario");
  }
  splits_.resize(policy_.candidates());
  for (int k = 0; k < policy_.candidates(); ++k) {
    const double alpha = policy_.alpha_at(k);
    splits_[k].resize(clusters_.by_cell.size());
    for (int i = 0; i < scenario_.num_cells(); ++i) {
      splits_[k][i].reserve(clusters_.by_cell[i].size());
      for (const Cluster& cl : clusters_.by_cell[i]) {
        splits_[k][i].push_back(split_power(cl, policy_.family, alpha,
                                            scenario_.cells[i].per_rb_power,
                                            scenario_));
      }
    }
  }
}

double LoadSolver::cell_load(int cell, const LoadVector& loads,
                             int candidate) const {
  const CellLp lp =
      build_cell_lp(cell, clusters_, splits_[candidate][cell], loads,
                    scenario_);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw std::runtime_error("cell " + std::to_string(cell) +
                             " program ended " + to_string(sol.status) +
                             "; the per-cell program should always be "
                             "solvable");
  }
  return sol.objective;
}

LoadSolver::BestResponse LoadSolver::cell_best(int cell,
                                               const LoadVector& loads) const {
  BestResponse best{cell_load(cell, loads, 0), 0};
  for (int k = 1; k < policy_.candidates(); ++k) {
    const double load = cell_load(cell, loads, k);
    if (load < best.load) best = {load, k};
  }
  return best;
}

LoadVector LoadSolver::step(const LoadVector& loads) const {
  LoadVector next(scenario_.num_cells());
  for (int i = 0; i < scenario_.num_cells(); ++i) {
    next[i] = cell_best(i, loads).load;
  }
  return next;
}

SolveOutcome LoadSolver::solve(const IterationConfig& config) const {
  const int n = scenario_.num_cells();
  if (!config.start.empty() &&
      config.start.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("start vector must have one load per cell");
  }
  if (!(config.epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be > 0");
  }
  if (!(config.divergence_cap > 0.0)) {
    throw std::invalid_argument("divergence_cap must be > 0");
  }

  LoadVector loads =
      config.start.empty() ? LoadVector(n, 0.0) : config.start;

  SolveOutcome out;
  out.rho_star = loads;
  out.load_history.push_back(loads);

  std::mt19937_64 rng(config.subset_seed);
  std::vector<int> last_update(n, 0);
  int last_big_change = 0;
  bool converged = false;
  bool diverged = false;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    // Which cells re-solve this iteration.
    std::vector<int> subset;
    switch (config.mode) {
      case IterationMode::Synchronous:
      case IterationMode::AsyncRoundRobin:
        for (int i = 0; i < n; ++i) subset.push_back(i);
        break;
      case IterationMode::AsyncRandom:
        for (int i = 0; i < n; ++i) {
          if (rng() & 1u) subset.push_back(i);
        }
        if (subset.empty()) {
          subset.push_back(static_cast<int>(rng() % n));
        }
        break;
    }

    double residual = 0.0;
    if (config.mode == IterationMode::Synchronous) {
      const LoadVector next = step(loads);
      for (int i = 0; i < n; ++i) {
        residual = std::max(residual, std::abs(next[i] - loads[i]));
      }
      loads = next;
    } else {
      // Updated cells immediately expose their new load to later ones.
      for (int i : subset) {
        const double next = cell_best(i, loads).load;
        residual = std::max(residual, std::abs(next - loads[i]));
        loads[i] = next;
      }
    }

    out.residual_history.push_back(residual);
    out.load_history.push_back(loads);
    out.iterations = iter;
    for (int i : subset) last_update[i] = iter;
    if (residual > config.epsilon) last_big_change = iter;

    if (*std::max_element(loads.begin(), loads.end()) >
        config.divergence_cap) {
      diverged = true;
      break;
    }
    if (residual <= config.epsilon &&
        *std::min_element(last_update.begin(), last_update.end()) >
            last_big_change) {
      converged = true;
      break;
    }
  }

  out.rho_star = loads;
  if (diverged) {
    out.status = SolveStatus::InfeasibleDiverged;
    return out;
  }
  if (!converged) {
    out.status = SolveStatus::MaxItersHit;
    return out;
  }
  if (*std::max_element(loads.begin(), loads.end()) >
      scenario_.load_limit + kCapSlack) {
    out.status = SolveStatus::InfeasibleCap;
    return out;
  }

  // Fixed point accepted: extract each cell's allocation at it.
  out.status = SolveStatus::Optimal;
  out.x_star.resize(n);
  out.clusters_star.resize(n);
  out.alpha_star.resize(n);
  out.alpha_index_star.resize(n);
  for (int i = 0; i < n; ++i) {
    const BestResponse best = cell_best(i, loads);
    const int k = best.candidate;
    const CellLp lp =
        build_cell_lp(i, clusters_, splits_[k][i], loads, scenario_);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
      throw std::runtime_error("extraction re-solve failed for cell " +
                               std::to_string(i));
    }
    out.x_star[i] = sol.x;
    out.alpha_star[i] = policy_.alpha_at(k);
    out.alpha_index_star[i] = k;
    for (std::size_t c = 0; c < sol.x.size(); ++c) {
      if (sol.x[c] > kShareFloor) {
        const PowerSplit& ps = splits_[k][i][c];
        out.clusters_star[i].push_back(
            {lp.columns[c], sol.x[c], ps.strong, ps.weak});
      }
    }
  }
  return out;
}

FeasibilityCheck LoadSolver::certify_feasible(const LoadVector& loads) const {
  if (loads.size() != static_cast<std::size_t>(scenario_.num_cells())) {
    throw std::invalid_argument("load vector must have one entry per cell");
  }
  for (double v : loads) {
    if (!(v >= 0.0) || v > scenario_.load_limit + kCapSlack) {
      throw std::invalid_argument(
          "loads must lie in [0, load_limit] to be certified");
    }
  }
  FeasibilityCheck check;
  check.improved = step(loads);
  check.feasible = true;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (check.improved[i] > loads[i] + kCapSlack) {
      check.feasible = false;
      break;
    }
  }
  return check;
}

LoadVector LoadSolver::improve(const LoadVector& loads) const {
  FeasibilityCheck check = certify_feasible(loads);
  if (!check.feasible) {
    throw std::invalid_argument(
        "improve requires a feasible load vector; certify_feasible rejected "
        "this one");
  }
  return std::move(check.improved);
}

}  // namespace nomaload
