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

#include <iosfwd>
#include <vector>

#include "nomaload/noma.hpp"
#include "nomaload/scenario.hpp"

namespace nomaload {

/// One cell's resource-share program:
///   minimize   sum_u x_u
///   subject to sum_u coeff[j][u] * x_u >= rhs[j]   for every row j
///              x >= 0
/// Row j is the demand constraint of served UE row_ues[j]; column u is
/// candidate cluster columns[u]; coeff[j][u] is that cluster's rate for UE j
/// (0 when the UE is not a member). All rhs entries must be > 0.
struct CellLp {
  int cell = -1;
  std::vector<int> row_ues;
  std::vector<Cluster> columns;
  std::vector<std::vector<double>> coeff;
  std::vector<double> rhs;

  int rows() const { return static_cast<int>(rhs.size()); }
  int cols() const { return static_cast<int>(columns.size()); }
};

enum class LpStatus {
  Optimal,
  Infeasible,
  NumericalFailure,  // pivot breakdown or solution failed verification
};

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  double objective = 0.0;
  std::vector<double> x;  // empty unless status == Optimal
};

/// Assembles the program for `cell` at the given inter-cell loads. `splits`
/// holds one power split per entry of `clusters.by_cell[cell]`, same order.
CellLp build_cell_lp(int cell, const ClusterSet& clusters,
                     const std::vector<PowerSplit>& splits,
                     const std::vector<double>& loads,
                     const Scenario& scenario);

/// Two-phase dense tableau simplex. Bland's rule for entering and leaving
/// variables makes the pivot sequence deterministic and cycle-free. Rows are
/// scaled so every right-hand side is 1 before pivoting. The returned basic
/// solution is re-checked against the input at 1e-9 relative tolerance;
/// failure to verify reports NumericalFailure rather than a wrong answer.
LpSolution solve_lp(const CellLp& lp);

/// Reference solver: enumerates every candidate vertex (all choices of
/// active constraints), solves each by Gaussian elimination, and returns the
/// feasible one with the smallest objective. Exact up to roundoff but
/// exponential in size; throws std::invalid_argument beyond 8 rows or 8
/// columns. Exists to cross-check solve_lp.
LpSolution oracle_solve(const CellLp& lp);

/// Writes the program as an aligned text table (clusters, rates, demands)
/// for debugging.
void dump_tableau(const CellLp& lp, std::ostream& out);

}  // namespace nomaload
