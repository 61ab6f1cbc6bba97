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
#include <vector>

#include "nomaload/lp.hpp"
#include "nomaload/noma.hpp"
#include "nomaload/scenario.hpp"

namespace nomaload {

/// Per-cell loads: the fraction of the resource grid each cell transmits on.
using LoadVector = std::vector<double>;

enum class IterationMode {
  Synchronous,     // all cells update from the previous iterate
  AsyncRoundRobin, // cells update in id order, each seeing earlier updates
  AsyncRandom,     // a seeded random nonempty subset updates per iteration
};

struct IterationConfig {
  IterationMode mode = IterationMode::Synchronous;
  /// Starting loads; empty means all zeros. The fixed point is unique, so
  /// the start only affects the path, never the answer.
  LoadVector start;
  double epsilon = 1e-6;      // sup-norm convergence threshold
  int max_iters = 500;
  double divergence_cap = 1e3;  // any load above this means no fixed point
  std::uint64_t subset_seed = 0;  // AsyncRandom subset stream
};

enum class SolveStatus {
  Optimal,             // fixed point found, within the load limit
  InfeasibleCap,       // fixed point found but some load exceeds the limit
  InfeasibleDiverged,  // iterates blew past divergence_cap
  MaxItersHit,         // neither converged nor diverged in max_iters
};

const char* to_string(SolveStatus status);

/// One cluster kept by the final allocation of a cell.
struct SelectedCluster {
  Cluster cluster;
  double share = 0.0;  // fraction of the resource grid given to the cluster
  double power_strong = 0.0;
  double power_weak = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::MaxItersHit;
  LoadVector rho_star;  // final loads (the fixed point when converged)
  /// Populated only when status == Optimal: per cell, the full share vector
  /// over that cell's candidate clusters, the clusters with share > 1e-9,
  /// and the winning power-split parameter with its grid index.
  std::vector<std::vector<double>> x_star;
  std::vector<std::vector<SelectedCluster>> clusters_star;
  std::vector<double> alpha_star;
  std::vector<int> alpha_index_star;
  int iterations = 0;
  std::vector<double> residual_history;     // one entry per iteration
  std::vector<LoadVector> load_history;     // start plus one per iteration
};

struct FeasibilityCheck {
  bool feasible = false;
  LoadVector improved;  // the one-step image, itself feasible when `feasible`
};

/// Fixed-point engine for the coupled per-cell programs. The map it iterates,
///   f_i(loads) = minimal load of cell i given the other cells' loads,
/// is a standard interference function in the load vector (monotone and
/// scalable), minimized over the power-split grid. Its fixed point is the
/// unique global optimum of the total-load problem.
class LoadSolver {
 public:
  LoadSolver(Scenario scenario, ClusterSet clusters, PowerPolicy policy);

  /// f_i at one grid candidate: the optimal objective of the cell's program
  /// with power splits taken at policy alpha index `candidate`. Throws
  /// std::runtime_error if the program cannot be solved to optimality.
  double cell_load(int cell, const LoadVector& loads, int candidate) const;

  struct BestResponse {
    double load = 0.0;
    int candidate = 0;
  };
  /// Minimum of cell_load over the grid; ties keep the lowest index.
  BestResponse cell_best(int cell, const LoadVector& loads) const;

  /// Full synchronous image: step(loads)[i] == cell_best(i, loads).load.
  LoadVector step(const LoadVector& loads) const;

  /// Iterates from config.start until the sup-norm residual stays within
  /// epsilon and every cell has re-solved since the last above-epsilon
  /// change, a load exceeds divergence_cap, or max_iters runs out.
  SolveOutcome solve(const IterationConfig& config) const;

  /// Tests whether `loads` is feasible, which holds exactly when one step
  /// maps it no higher in any coordinate. `loads` must respect the load
  /// limit, else std::invalid_argument.
  FeasibilityCheck certify_feasible(const LoadVector& loads) const;

  /// One improvement step from a feasible point: the image is again feasible
  /// and no higher, and repeated application converges to the fixed point.
  /// Throws std::invalid_argument when `loads` fails certify_feasible.
  LoadVector improve(const LoadVector& loads) const;

  const Scenario& scenario() const { return scenario_; }
  const ClusterSet& clusters() const { return clusters_; }
  const PowerPolicy& policy() const { return policy_; }

  /// Power splits of every candidate cluster of `cell` at grid index
  /// `candidate`, in cluster order.
  const std::vector<PowerSplit>& splits(int cell, int candidate) const {
    return splits_[candidate][cell];
  }

 private:
  Scenario scenario_;
  ClusterSet clusters_;
  PowerPolicy policy_;
  // splits_[candidate][cell][cluster index]
  std::vector<std::vector<std::vector<PowerSplit>>> splits_;
};

}  // namespace nomaload
