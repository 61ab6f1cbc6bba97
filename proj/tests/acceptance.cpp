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

// Release gate: nine numbered checks, each printing one PASS or FAIL line
// with its measured numbers. Run them all, or one with --criterion N. The
// exit code is the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nomaload/experiments.hpp"
#include "nomaload/lp.hpp"
#include "nomaload/scenario_gen.hpp"
#include "nomaload/sif.hpp"

namespace {

using namespace nomaload;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * ((static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53);
}

const std::vector<double> kFtpcGrid{0.2, 0.4, 0.6, 0.8};
const std::vector<double> kNttGrid{0.1, 0.2, 0.3, 0.4};

SolveOutcome solve_policy(const Scenario& scenario, const std::string& policy,
                          IterationMode mode = IterationMode::Synchronous,
                          LoadVector start = {}, double epsilon = 1e-8,
                          int max_iters = 3000) {
  auto [clusters, power] = policy_setup(policy, scenario, kFtpcGrid, kNttGrid);
  const LoadSolver solver(scenario, std::move(clusters), std::move(power));
  IterationConfig cfg;
  cfg.mode = mode;
  cfg.start = std::move(start);
  cfg.epsilon = epsilon;
  cfg.max_iters = max_iters;
  cfg.subset_seed = 17;
  return solver.solve(cfg);
}

// Shared pool of mid-size deployments with the singleton baseline calibrated
// to a 0.6 peak load, used by several checks below.
std::vector<Scenario> calibrated_pool() {
  std::vector<Scenario> out;
  for (std::uint64_t seed = 2000; seed < 2020; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_small_cells = 3;
    cfg.num_ues = 16;
    out.push_back(calibrate_demands(generate(cfg), 0.6).scenario);
  }
  return out;
}

double max_abs_diff(const LoadVector& a, const LoadVector& b) {
  double mx = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mx = std::max(mx, std::abs(a[i] - b[i]));
  }
  return mx;
}

double spearman(std::vector<double> x, std::vector<double> y) {
  const auto ranks = [](std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t pos = 0; pos < idx.size();) {
      std::size_t end = pos;
      while (end + 1 < idx.size() && v[idx[end + 1]] == v[idx[pos]]) ++end;
      const double avg = 0.5 * (pos + end) + 1.0;
      for (std::size_t k = pos; k <= end; ++k) r[idx[k]] = avg;
      pos = end + 1;
    }
    v = r;
  };
  ranks(x);
  ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// 1. The simplex must agree with exhaustive vertex enumeration on a large
//    batch of random dense programs, quickly.
bool criterion_lp_oracle(std::string& detail) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const int instances = 1000;
  double worst = 0.0;
  for (int trial = 0; trial < instances; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 6);
    CellLp lp;
    lp.cell = 0;
    lp.coeff.assign(m, std::vector<double>(n));
    lp.rhs.resize(m);
    lp.row_ues.resize(m);
    lp.columns.assign(n, Cluster{0, 0, -1});
    for (int r = 0; r < m; ++r) {
      lp.row_ues[r] = r;
      for (int c = 0; c < n; ++c) lp.coeff[r][c] = uniform(rng, 0.1, 10.0);
      lp.rhs[r] = uniform(rng, 0.5, 2.0);
    }
    const LpSolution got = solve_lp(lp);
    const LpSolution ref = oracle_solve(lp);
    if (got.status != LpStatus::Optimal || ref.status != LpStatus::Optimal) {
      detail = "instance " + std::to_string(trial) + " not solved by both";
      return false;
    }
    const double rel = std::abs(got.objective - ref.objective) /
                       std::max(1.0, std::abs(ref.objective));
    worst = std::max(worst, rel);
    if (rel > 1e-9) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "instance %d deviates by %.3e", trial,
                    rel);
      detail = buf;
      return false;
    }
  }
  const double elapsed = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "%d instances, worst relative gap %.2e, %.2f s", instances,
                worst, elapsed);
  detail = buf;
  return elapsed < 10.0;
}

// 2. The per-cell best-response map must be monotone in the loads and
//    strictly scalable.
bool criterion_sif_axioms(std::string& detail) {
  std::mt19937_64 rng(515);
  double worst_mono = 0.0;        // positive means violation
  double worst_margin = 1e300;    // scalability slack, must stay positive
  for (int k = 0; k < 100; ++k) {
    GenConfig cfg;
    cfg.seed = 1000 + static_cast<std::uint64_t>(k);
    cfg.num_small_cells = 2;
    cfg.num_ues = 12;
    const Scenario s = generate(cfg);
    for (const char* policy : {"oma", "ftpc"}) {
      auto [clusters, power] = policy_setup(policy, s, kFtpcGrid, kNttGrid);
      const LoadSolver solver(s, std::move(clusters), std::move(power));

      LoadVector lo(3), hi(3);
      for (int i = 0; i < 3; ++i) {
        lo[i] = uniform(rng, 0.0, 1.0);
        hi[i] = lo[i] + uniform(rng, 0.0, 0.5);
      }
      const LoadVector f_lo = solver.step(lo);
      const LoadVector f_hi = solver.step(hi);
      for (int i = 0; i < 3; ++i) {
        worst_mono = std::max(worst_mono, f_lo[i] - f_hi[i]);
      }
      for (const double alpha : {1.5, 2.0, 5.0}) {
        LoadVector scaled = lo;
        for (double& v : scaled) v *= alpha;
        const LoadVector f_scaled = solver.step(scaled);
        for (int i = 0; i < 3; ++i) {
          worst_margin = std::min(worst_margin, alpha * f_lo[i] - f_scaled[i]);
        }
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "100 scenarios x 2 policies: worst monotonicity gap %.2e, "
                "smallest scalability margin %.2e",
                worst_mono, worst_margin);
  detail = buf;
  return worst_mono <= 1e-12 && worst_margin > 0.0;
}

// 3. The same fixed point must come out whether iteration starts cold or at
//    the load ceiling.
bool criterion_start_independence(std::string& detail) {
  double worst = 0.0;
  for (const Scenario& s : calibrated_pool()) {
    const SolveOutcome a = solve_policy(s, "ftpc");
    const SolveOutcome b = solve_policy(s, "ftpc", IterationMode::Synchronous,
                                        LoadVector(s.num_cells(), s.load_limit));
    if (a.status != SolveStatus::Optimal || b.status != SolveStatus::Optimal) {
      detail = "a pool scenario did not solve from both starts";
      return false;
    }
    worst = std::max(worst, max_abs_diff(a.rho_star, b.rho_star));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "20 scenarios, max deviation %.2e", worst);
  detail = buf;
  return worst <= 1e-5;
}

// 4. Gauss-Seidel style schedules must land on the synchronous answer.
bool criterion_async_agreement(std::string& detail) {
  double worst = 0.0;
  for (const Scenario& s : calibrated_pool()) {
    const SolveOutcome sync = solve_policy(s, "ftpc");
    const SolveOutcome rr =
        solve_policy(s, "ftpc", IterationMode::AsyncRoundRobin);
    const SolveOutcome rnd =
        solve_policy(s, "ftpc", IterationMode::AsyncRandom);
    if (sync.status != SolveStatus::Optimal ||
        rr.status != SolveStatus::Optimal ||
        rnd.status != SolveStatus::Optimal) {
      detail = "a pool scenario did not solve under every schedule";
      return false;
    }
    worst = std::max(worst, max_abs_diff(sync.rho_star, rr.rho_star));
    worst = std::max(worst, max_abs_diff(sync.rho_star, rnd.rho_star));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "20 scenarios, round-robin and random, max deviation %.2e",
                worst);
  detail = buf;
  return worst <= 1e-5;
}

// 5. On a mirror-symmetric two-cell deployment the fixed point collapses to
//    one scalar equation, solvable by bisection.
bool criterion_two_cell(std::string& detail) {
  double worst = 0.0;
  for (const double demand : {1e7, 5e7, 1e8}) {
    Scenario s;
    s.cells = {{0, {0.0, 0.0}, 0.5, CellKind::Macro},
               {1, {1000.0, 0.0}, 0.5, CellKind::Macro}};
    s.ues = {{0, {0.0, 0.0}, 0, demand}, {1, {1000.0, 0.0}, 1, demand}};
    s.gains = {1e-10, 1e-12, 1e-12, 1e-10};
    s.rb_count = 100;
    s.rb_bandwidth = 180e3;
    s.noise_power = 9.021370205291e-16;
    s.load_limit = 1.0;

    const SolveOutcome out = solve_policy(s, "oma", IterationMode::Synchronous,
                                          {}, 1e-11, 20000);
    if (out.status != SolveStatus::Optimal) {
      detail = "the two-cell deployment did not solve";
      return false;
    }

    const auto served = [&](double r) {
      const double sinr =
          0.5 * 1e-10 / (0.5 * 1e-12 * r + s.noise_power);
      return r * s.rb_count * s.rb_bandwidth * std::log2(1.0 + sinr);
    };
    double lo = 0.0, hi = 1e3;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (served(mid) < demand ? lo : hi) = mid;
    }
    const double ref = 0.5 * (lo + hi);
    worst = std::max(worst, std::abs(out.rho_star[0] - ref) /
                                std::max(1.0, std::abs(ref)));
    worst = std::max(worst, std::abs(out.rho_star[1] - ref) /
                                std::max(1.0, std::abs(ref)));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "3 demand levels, worst deviation %.2e",
                worst);
  detail = buf;
  return worst <= 1e-6;
}

// 6. Richer candidate sets can only lower the loads, and every kept pair is
//    decodable at the solution.
bool criterion_dominance(std::string& detail) {
  const double slack = 1e-6;  // answers carry iteration error of ~1e-8 each
  int pairs_checked = 0;
  for (const Scenario& s : calibrated_pool()) {
    const SolveOutcome oma = solve_policy(s, "oma");
    if (oma.status != SolveStatus::Optimal) {
      detail = "baseline did not solve";
      return false;
    }
    const double oma_total = metric("sum_load", oma.rho_star);

    for (const std::string policy : {"uniform", "ftpc", "ntt"}) {
      const SolveOutcome noma = solve_policy(s, policy);
      if (noma.status != SolveStatus::Optimal) {
        detail = policy + " did not solve";
        return false;
      }
      if (metric("sum_load", noma.rho_star) > oma_total + slack) {
        detail = policy + " exceeded the singleton baseline";
        return false;
      }
      for (int i = 0; i < s.num_cells(); ++i) {
        if (noma.rho_star[i] > oma.rho_star[i] + slack) {
          detail = policy + " exceeded the baseline in cell " +
                   std::to_string(i);
          return false;
        }
        for (const SelectedCluster& sc : noma.clusters_star[i]) {
          if (!sc.cluster.is_pair()) continue;
          ++pairs_checked;
          if (!check_decoding_condition(sc.cluster, noma.rho_star, s)) {
            detail = "selected pair fails its decoding condition";
            return false;
          }
        }
      }
    }

    // Searching the parameter grid can only beat any one of its points.
    for (const auto& [policy, grid] :
         {std::pair<std::string, std::vector<double>>{"ftpc", kFtpcGrid},
          {"ntt", kNttGrid}}) {
      const SolveOutcome with_grid = solve_policy(s, policy);
      const double grid_total = metric("sum_load", with_grid.rho_star);
      for (const double alpha : grid) {
        auto clusters = enumerate_clusters(s);
        const PowerPolicy single =
            policy == "ftpc" ? PowerPolicy::ftpc({alpha})
                             : PowerPolicy::ntt({alpha});
        const LoadSolver solver(s, std::move(clusters), single);
        IterationConfig cfg;
        cfg.epsilon = 1e-8;
        cfg.max_iters = 3000;
        const SolveOutcome one = solver.solve(cfg);
        if (one.status != SolveStatus::Optimal) {
          detail = "single-parameter run did not solve";
          return false;
        }
        if (grid_total > metric("sum_load", one.rho_star) + slack) {
          char buf[128];
          std::snprintf(buf, sizeof(buf),
                        "%s grid exceeded its own alpha=%.1f run",
                        policy.c_str(), alpha);
          detail = buf;
          return false;
        }
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "20 scenarios x 3 policies dominated, %d selected pairs "
                "decodable",
                pairs_checked);
  detail = buf;
  return true;
}

// 7. At desk scale the policy ordering of the reference table must
//    reproduce: both gain-aware splits beat the uniform split, all beat the
//    singleton baseline.
bool criterion_policy_ranking(std::string& detail) {
  const auto t0 = Clock::now();
  ExperimentSpec spec;
  spec.base.num_small_cells = 6;
  spec.seeds.clear();
  for (std::uint64_t seed = 3000; seed < 3020; ++seed) {
    spec.seeds.push_back(seed);
  }
  spec.ue_counts = {40};
  spec.load_limits = {1.0};
  spec.policies = {"oma", "uniform", "ftpc", "ntt"};
  spec.ftpc_grid = kFtpcGrid;
  spec.ntt_grid = kNttGrid;
  spec.iteration.epsilon = 1e-7;
  spec.iteration.max_iters = 3000;

  const std::vector<ResultRow> rows = run_experiment(spec);
  const std::vector<ComparisonRow> table = compare_to_baseline(rows, "oma");

  double uniform_red = 0.0, ftpc_red = 0.0, ntt_red = 0.0;
  int covered = 0;
  for (const ComparisonRow& c : table) {
    if (c.scenarios != 20) {
      detail = c.policy + " solved only " + std::to_string(c.scenarios) +
               " of 20 scenarios";
      return false;
    }
    if (c.policy == "uniform") uniform_red = c.mean_max_load_reduction_pct;
    if (c.policy == "ftpc") ftpc_red = c.mean_max_load_reduction_pct;
    if (c.policy == "ntt") ntt_red = c.mean_max_load_reduction_pct;
    ++covered;
  }
  const double elapsed = seconds_since(t0);
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "mean max-load reduction over 20 scenarios: ftpc %.1f%%, "
                "ntt %.1f%%, uniform %.1f%% (reference table: 19.9, 19.4, "
                "11.7), %.1f s",
                ftpc_red, ntt_red, uniform_red, elapsed);
  detail = buf;
  return covered == 3 && ftpc_red > uniform_red && ntt_red > uniform_red &&
         uniform_red > 0.0 && elapsed < 300.0;
}

// 8. The pairing gain must grow with demand pressure, and the efficiency
//    gain with user density.
bool criterion_trends(std::string& detail) {
  const std::vector<double> targets{0.4, 0.7, 1.0};
  std::vector<double> load_reductions;
  for (const double target : targets) {
    double mean = 0.0;
    int n = 0;
    for (std::uint64_t seed = 4000; seed < 4010; ++seed) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.num_small_cells = 3;
      cfg.num_ues = 20;
      const Scenario s = calibrate_demands(generate(cfg), target).scenario;
      const SolveOutcome oma = solve_policy(s, "oma");
      const SolveOutcome ftpc = solve_policy(s, "ftpc");
      if (oma.status != SolveStatus::Optimal ||
          ftpc.status != SolveStatus::Optimal) {
        detail = "a trend scenario did not solve";
        return false;
      }
      const double base = metric("sum_load", oma.rho_star);
      mean += (base - metric("sum_load", ftpc.rho_star)) / base;
      ++n;
    }
    load_reductions.push_back(mean / n);
  }
  const double rho_demand = spearman(targets, load_reductions);

  const std::vector<double> ue_counts{12, 24, 36};
  std::vector<double> rate_gains;
  for (const double ues : ue_counts) {
    double mean = 0.0;
    int n = 0;
    for (std::uint64_t seed = 5000; seed < 5010; ++seed) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.num_small_cells = 3;
      cfg.num_ues = static_cast<int>(ues);
      const Scenario s = calibrate_demands(generate(cfg), 1.0).scenario;
      const SolveOutcome oma = solve_policy(s, "oma");
      const SolveOutcome ftpc = solve_policy(s, "ftpc");
      if (oma.status != SolveStatus::Optimal ||
          ftpc.status != SolveStatus::Optimal) {
        detail = "a trend scenario did not solve";
        return false;
      }
      const double base = rate_efficiency(s, oma.rho_star);
      mean += (rate_efficiency(s, ftpc.rho_star) - base) / base;
      ++n;
    }
    rate_gains.push_back(mean / n);
  }
  const double rho_ues = spearman(ue_counts, rate_gains);

  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "load reduction vs demand scale: %.3f/%.3f/%.3f (spearman "
                "%.2f); rate gain vs UE count: %.3f/%.3f/%.3f (spearman %.2f)",
                load_reductions[0], load_reductions[1], load_reductions[2],
                rho_demand, rate_gains[0], rate_gains[1], rate_gains[2],
                rho_ues);
  detail = buf;
  return rho_demand > 0.0 && rho_ues > 0.0;
}

// 9. From any certified-feasible point, the one-step map must descend
//    monotonically into the fixed point.
bool criterion_improvement(std::string& detail) {
  int max_steps = 0;
  for (const Scenario& s : calibrated_pool()) {
    auto [clusters, power] = policy_setup("ftpc", s, kFtpcGrid, kNttGrid);
    const LoadSolver solver(s, std::move(clusters), std::move(power));
    IterationConfig cfg;
    cfg.epsilon = 1e-8;
    cfg.max_iters = 3000;
    const SolveOutcome out = solver.solve(cfg);
    if (out.status != SolveStatus::Optimal) {
      detail = "a pool scenario did not solve";
      return false;
    }

    std::vector<LoadVector> starts;
    for (const double c : {1.05, 1.3}) {
      LoadVector start = out.rho_star;
      bool ok = true;
      for (double& v : start) {
        v *= c;
        ok = ok && v <= s.load_limit;
      }
      if (ok) starts.push_back(std::move(start));
    }
    const LoadVector ceiling(s.num_cells(), s.load_limit);
    if (solver.certify_feasible(ceiling).feasible) {
      starts.push_back(ceiling);
    }
    if (starts.empty()) {
      detail = "no certified starting point could be built";
      return false;
    }

    for (LoadVector current : starts) {
      if (!solver.certify_feasible(current).feasible) {
        detail = "a scaled fixed point failed certification";
        return false;
      }
      int steps = 0;
      while (max_abs_diff(current, out.rho_star) > 1e-5) {
        if (++steps > 2000) {
          detail = "improvement did not reach the fixed point in 2000 steps";
          return false;
        }
        const LoadVector next = solver.improve(current);
        for (std::size_t i = 0; i < next.size(); ++i) {
          if (next[i] > current[i] + 1e-12) {
            detail = "an improvement step moved a load upward";
            return false;
          }
        }
        current = next;
      }
      max_steps = std::max(max_steps, steps);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "20 scenarios, all starts descended; longest run %d steps",
                max_steps);
  detail = buf;
  return true;
}

struct Criterion {
  int id;
  const char* title;
  bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "lp solver agrees with the exhaustive oracle", criterion_lp_oracle},
    {2, "load map is monotone and scalable", criterion_sif_axioms},
    {3, "fixed point is start independent", criterion_start_independence},
    {4, "asynchronous schedules reach the synchronous fixed point",
     criterion_async_agreement},
    {5, "symmetric two-cell load matches scalar bisection",
     criterion_two_cell},
    {6, "pairing dominates the singleton baseline", criterion_dominance},
    {7, "desk-scale policy ranking matches the reference ordering",
     criterion_policy_ranking},
    {8, "gains trend with demand scale and user count", criterion_trends},
    {9, "feasible points improve monotonically to the fixed point",
     criterion_improvement},
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;  // 0 runs everything
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 1;
    }
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (selected != 0 && c.id != selected) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id,
                c.title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
