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

#include "nomaload/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nomaload {

namespace {

constexpr double kReducedCostTol = 1e-10;
constexpr double kPivotTol = 1e-12;
constexpr double kVerifyTol = 1e-9;
constexpr int kMaxPivots = 10000;

// Rows of the program scaled so every right-hand side equals 1. Keeps pivot
// magnitudes comparable across rows and makes scaling the demands a no-op on
// the pivot path.
std::vector<std::vector<double>> scale_rows(const CellLp& lp) {
  std::vector<std::vector<double>> scaled(lp.rows());
  for (int r = 0; r < lp.rows(); ++r) {
    if (!(lp.rhs[r] > 0.0)) {
      throw std::invalid_argument("lp rhs[" + std::to_string(r) +
                                  "] must be > 0");
    }
    scaled[r].resize(lp.cols());
    for (int c = 0; c < lp.cols(); ++c) {
      scaled[r][c] = lp.coeff[r][c] / lp.rhs[r];
    }
  }
  return scaled;
}

// Dense two-phase tableau. Column layout: [0,n) decision vars, [n,n+m)
// surplus, [n+m,n+2m) artificials, last column the right-hand side. Rows may
// be deleted (redundant constraints) but the column layout never changes.
struct Tableau {
  int n = 0;   // decision variables
  int m0 = 0;  // rows at construction, fixes the column layout
  std::vector<std::vector<double>> t;
  std::vector<int> basis;
  std::vector<double> z;  // reduced costs; z.back() is minus the objective

  int rhs_col() const { return n + 2 * m0; }
  int rows() const { return static_cast<int>(t.size()); }

  void pivot(int pr, int pc) {
    std::vector<double>& prow = t[pr];
    const double inv = 1.0 / prow[pc];
    for (double& v : prow) v *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      const double f = t[r][pc];
      if (f == 0.0) continue;
      for (int c = 0; c <= rhs_col(); ++c) t[r][c] -= f * prow[c];
      t[r][pc] = 0.0;
    }
    const double f = z[pc];
    if (f != 0.0) {
      for (int c = 0; c <= rhs_col(); ++c) z[c] -= f * prow[c];
      z[pc] = 0.0;
    }
    basis[pr] = pc;
  }
};

enum class LoopExit { Converged, Unbounded, PivotCap };

// One simplex phase under Bland's rule: entering variable is the lowest
// index with negative reduced cost, leaving row breaks ratio ties by lowest
// basis index. Artificial columns never enter.
LoopExit run_simplex(Tableau& tb, int* pivots) {
  const int enter_limit = tb.n + tb.m0;  // decision and surplus columns only
  while (true) {
    int entering = -1;
    for (int v = 0; v < enter_limit; ++v) {
      if (tb.z[v] < -kReducedCostTol) {
        entering = v;
        break;
      }
    }
    if (entering < 0) return LoopExit::Converged;
    if (++*pivots > kMaxPivots) return LoopExit::PivotCap;

    int leaving = -1;
    double best = 0.0;
    for (int r = 0; r < tb.rows(); ++r) {
      const double a = tb.t[r][entering];
      if (a <= kPivotTol) continue;
      const double ratio = tb.t[r][tb.rhs_col()] / a;
      if (leaving < 0) {
        best = ratio;
        leaving = r;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, std::abs(best));
      if (ratio < best - slack) {
        best = ratio;
        leaving = r;
      } else if (ratio <= best + slack && tb.basis[r] < tb.basis[leaving]) {
        leaving = r;
      }
    }
    if (leaving < 0) return LoopExit::Unbounded;
    tb.pivot(leaving, entering);
  }
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::NumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

CellLp build_cell_lp(int cell, const ClusterSet& clusters,
                     const std::vector<PowerSplit>& splits,
                     const std::vector<double>& loads,
                     const Scenario& scenario) {
  const std::vector<Cluster>& cols = clusters.by_cell.at(cell);
  if (splits.size() != cols.size()) {
    throw std::invalid_argument("one power split per cluster required");
  }
  CellLp lp;
  lp.cell = cell;
  lp.row_ues = scenario.served_ues(cell);
  lp.columns = cols;
  lp.rhs.reserve(lp.row_ues.size());
  for (int ue : lp.row_ues) lp.rhs.push_back(scenario.ues[ue].demand);
  lp.coeff.assign(lp.row_ues.size(),
                  std::vector<double>(cols.size(), 0.0));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Cluster& cl = cols[c];
    const int members[2] = {cl.first, cl.second};
    for (int mi = 0; mi < cl.size(); ++mi) {
      const int ue = members[mi];
      const auto it = std::find(lp.row_ues.begin(), lp.row_ues.end(), ue);
      const std::size_t r = static_cast<std::size_t>(it - lp.row_ues.begin());
      lp.coeff[r][c] = capacity(sinr(cl, ue, splits[c], loads, scenario),
                                scenario.rb_count, scenario.rb_bandwidth);
    }
  }
  return lp;
}

LpSolution solve_lp(const CellLp& lp) {
  const int m = lp.rows();
  const int n = lp.cols();
  if (m == 0) return {LpStatus::Optimal, 0.0, std::vector<double>(n, 0.0)};

  const std::vector<std::vector<double>> scaled = scale_rows(lp);

  Tableau tb;
  tb.n = n;
  tb.m0 = m;
  tb.t.assign(m, std::vector<double>(n + 2 * m + 1, 0.0));
  tb.basis.resize(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) tb.t[r][c] = scaled[r][c];
    tb.t[r][n + r] = -1.0;          // surplus
    tb.t[r][n + m + r] = 1.0;       // artificial, initial basis
    tb.t[r][tb.rhs_col()] = 1.0;    // scaled right-hand side
    tb.basis[r] = n + m + r;
  }

  // Phase 1: minimize the artificial sum. With the artificial basis the
  // reduced cost of column v is minus its column sum.
  tb.z.assign(n + 2 * m + 1, 0.0);
  for (int v = 0; v < n + m; ++v) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += tb.t[r][v];
    tb.z[v] = -s;
  }
  tb.z[tb.rhs_col()] = -static_cast<double>(m);

  int pivots = 0;
  LoopExit exit = run_simplex(tb, &pivots);
  if (exit != LoopExit::Converged) return {LpStatus::NumericalFailure, 0.0, {}};
  const double infeasibility = -tb.z[tb.rhs_col()];
  if (infeasibility > 1e-9 * std::max(1.0, static_cast<double>(m))) {
    return {LpStatus::Infeasible, 0.0, {}};
  }

  // Drive leftover artificials out of the basis; a row where that is
  // impossible is redundant and dropped.
  for (int r = tb.rows() - 1; r >= 0; --r) {
    if (tb.basis[r] < n + m) continue;
    int col = -1;
    for (int v = 0; v < n + m; ++v) {
      if (std::abs(tb.t[r][v]) > 1e-9) {
        col = v;
        break;
      }
    }
    if (col >= 0) {
      tb.pivot(r, col);
    } else {
      tb.t.erase(tb.t.begin() + r);
      tb.basis.erase(tb.basis.begin() + r);
    }
  }

  // Phase 2: minimize the plain sum of the decision variables.
  std::fill(tb.z.begin(), tb.z.end(), 0.0);
  for (int v = 0; v < n; ++v) tb.z[v] = 1.0;
  for (int r = 0; r < tb.rows(); ++r) {
    if (tb.basis[r] >= n) continue;
    const std::vector<double>& row = tb.t[r];
    for (int c = 0; c <= tb.rhs_col(); ++c) tb.z[c] -= row[c];
  }

  exit = run_simplex(tb, &pivots);
  if (exit != LoopExit::Converged) return {LpStatus::NumericalFailure, 0.0, {}};

  std::vector<double> x(n, 0.0);
  for (int r = 0; r < tb.rows(); ++r) {
    if (tb.basis[r] < n) x[tb.basis[r]] = tb.t[r][tb.rhs_col()];
  }
  for (double& v : x) {
    if (v < 0.0) {
      if (v < -1e-11) return {LpStatus::NumericalFailure, 0.0, {}};
      v = 0.0;
    }
  }

  // Verify against the untouched scaled rows rather than trusting the
  // pivoted tableau.
  for (int r = 0; r < m; ++r) {
    double dot = 0.0;
    for (int c = 0; c < n; ++c) dot += scaled[r][c] * x[c];
    if (!(dot >= 1.0 - kVerifyTol)) return {LpStatus::NumericalFailure, 0.0, {}};
  }

  double objective = 0.0;
  for (double v : x) objective += v;
  return {LpStatus::Optimal, objective, std::move(x)};
}

LpSolution oracle_solve(const CellLp& lp) {
  const int m = lp.rows();
  const int n = lp.cols();
  if (m > 8 || n > 8) {
    throw std::invalid_argument("oracle_solve is exhaustive; limited to 8x8");
  }
  if (m == 0) return {LpStatus::Optimal, 0.0, std::vector<double>(n, 0.0)};

  const std::vector<std::vector<double>> scaled = scale_rows(lp);

  const auto feasible = [&](const std::vector<double>& x) {
    for (double v : x) {
      if (!(v >= -1e-10) || !std::isfinite(v)) return false;
    }
    for (int r = 0; r < m; ++r) {
      double dot = 0.0;
      for (int c = 0; c < n; ++c) dot += scaled[r][c] * x[c];
      if (!(dot >= 1.0 - 1e-8)) return false;
    }
    return true;
  };

  if (n == 0) return {LpStatus::Infeasible, 0.0, {}};

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;

  // A vertex activates n of the m + n constraints (demand rows, then the
  // nonnegativity bounds). Enumerate every choice as a bitmask.
  const int total = m + n;
  for (unsigned mask = 0; mask < (1u << total); ++mask) {
    if (__builtin_popcount(mask) != n) continue;

    // Assemble the n x n active system.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    int row = 0;
    for (int k = 0; k < total; ++k) {
      if (!(mask & (1u << k))) continue;
      if (k < m) {
        for (int c = 0; c < n; ++c) a[row][c] = scaled[k][c];
        a[row][n] = 1.0;
      } else {
        a[row][k - m] = 1.0;
        a[row][n] = 0.0;
      }
      ++row;
    }

    // Gaussian elimination with partial pivoting; singular systems are
    // skipped, they describe no vertex.
    bool singular = false;
    for (int col = 0; col < n && !singular; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      }
      if (std::abs(a[piv][col]) < 1e-12) {
        singular = true;
        break;
      }
      std::swap(a[col], a[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        if (f == 0.0) continue;
        for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    if (singular) continue;

    std::vector<double> x(n);
    for (int c = 0; c < n; ++c) x[c] = a[c][n] / a[c][c];
    if (!feasible(x)) continue;

    double obj = 0.0;
    for (double v : x) obj += v;
    if (obj < best) {
      best = obj;
      best_x = std::move(x);
    }
  }

  if (best_x.empty() && !std::isfinite(best)) {
    return {LpStatus::Infeasible, 0.0, {}};
  }
  for (double& v : best_x) v = std::max(v, 0.0);
  return {LpStatus::Optimal, best, std::move(best_x)};
}

void dump_tableau(const CellLp& lp, std::ostream& out) {
  out << "cell " << lp.cell << " program: minimize sum of " << lp.cols()
      << " shares subject to " << lp.rows() << " demand rows\n";
  out << "columns:";
  for (int c = 0; c < lp.cols(); ++c) {
    const Cluster& cl = lp.columns[c];
    out << ' ' << c << ":{" << cl.first;
    if (cl.is_pair()) out << ',' << cl.second;
    out << '}';
  }
  out << '\n';
  for (int r = 0; r < lp.rows(); ++r) {
    out << "ue " << lp.row_ues[r] << " |";
    for (int c = 0; c < lp.cols(); ++c) out << ' ' << lp.coeff[r][c];
    out << " >= " << lp.rhs[r] << '\n';
  }
}

}  // namespace nomaload
