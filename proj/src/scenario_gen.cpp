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

#include "nomaload/scenario_gen.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "nomaload/noma.hpp"
#include "nomaload/sif.hpp"

namespace nomaload {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinDistance = 10.0;  // meters, path-loss model floor
constexpr int kMaxDropAttempts = 200;
constexpr double kBaseDemand = 1e6;  // bits per second

// Draws built directly from raw mt19937_64 words so results do not depend on
// the standard library's distribution implementations.
double next_uniform(std::mt19937_64& rng) {
  // 53 random bits, offset to the open interval (0, 1).
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double next_normal(std::mt19937_64& rng) {
  const double u = next_uniform(rng);
  const double v = next_uniform(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
}

// Unit-mean exponential: the power of a Rayleigh-faded unit-power signal.
double next_exponential(std::mt19937_64& rng) {
  return -std::log1p(-next_uniform(rng));
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

double path_loss_db(double distance_m, double base_height_m,
                    double carrier_freq_hz) {
  const double f_mhz = carrier_freq_hz / 1e6;
  const double d_km = std::max(distance_m, kMinDistance) / 1000.0;
  const double hm = kUeHeight;
  const double a_hm = (1.1 * std::log10(f_mhz) - 0.7) * hm -
                      (1.56 * std::log10(f_mhz) - 0.8);
  return 46.3 + 33.9 * std::log10(f_mhz) - 13.82 * std::log10(base_height_m) -
         a_hm + (44.9 - 6.55 * std::log10(base_height_m)) * std::log10(d_km);
}

GeneratedScenario generate_detailed(const GenConfig& config) {
  if (config.num_small_cells < 0 || config.num_ues < 1) {
    throw std::invalid_argument("need num_small_cells >= 0 and num_ues >= 1");
  }
  const int n = 1 + config.num_small_cells;
  const int m = config.num_ues;

  std::mt19937_64 rng(config.seed);

  Scenario s;
  s.cells.push_back({0, {0.0, 0.0}, config.macro_power, CellKind::Macro});
  const double ring = config.macro_radius / 2.0;
  const double rotation = 2.0 * kPi * next_uniform(rng);
  for (int k = 0; k < config.num_small_cells; ++k) {
    const double theta = rotation + 2.0 * kPi * k / config.num_small_cells;
    s.cells.push_back({1 + k,
                       {ring * std::cos(theta), ring * std::sin(theta)},
                       config.small_power,
                       CellKind::Small});
  }

  std::vector<double> mean_gains;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxDropAttempts) {
      throw std::runtime_error(
          "no UE drop left every cell non-empty after " +
          std::to_string(kMaxDropAttempts) + " attempts; add UEs or cut cells");
    }
    s.ues.clear();
    s.gains.assign(static_cast<std::size_t>(n) * m, 0.0);
    mean_gains.assign(static_cast<std::size_t>(n) * m, 0.0);

    for (int j = 0; j < m; ++j) {
      const double r = config.macro_radius * std::sqrt(next_uniform(rng));
      const double theta = 2.0 * kPi * next_uniform(rng);
      UeConfig ue;
      ue.id = j;
      ue.position = {r * std::cos(theta), r * std::sin(theta)};

      int best_cell = 0;
      double best_gain = -1.0;
      for (int i = 0; i < n; ++i) {
        const CellConfig& cell = s.cells[i];
        const double pl = path_loss_db(
            distance(cell.position, ue.position),
            cell.kind == CellKind::Macro ? kMacroHeight : kSmallHeight,
            config.carrier_freq);
        const double sigma = cell.kind == CellKind::Macro
                                 ? config.shadowing_sigma_macro
                                 : config.shadowing_sigma_small;
        const double shadow_db = sigma * next_normal(rng);
        const double mean = std::pow(10.0, (-pl + shadow_db) / 10.0);
        const double faded = mean * next_exponential(rng);
        mean_gains[static_cast<std::size_t>(i) * m + j] = mean;
        s.gains[static_cast<std::size_t>(i) * m + j] = faded;
        if (mean > best_gain) {
          best_gain = mean;
          best_cell = i;
        }
      }
      ue.serving_cell = best_cell;
      ue.demand = 1.0;  // placeholder until the drop is accepted
      s.ues.push_back(ue);
    }

    std::vector<int> served(n, 0);
    for (const UeConfig& ue : s.ues) ++served[ue.serving_cell];
    bool all_served = true;
    for (int c : served) all_served = all_served && c > 0;
    if (all_served) break;
  }

  for (UeConfig& ue : s.ues) {
    ue.demand = kBaseDemand * (0.5 + next_uniform(rng));
  }

  s.rb_count = kRbCount;
  s.rb_bandwidth = kRbBandwidthHz;
  s.noise_power =
      std::pow(10.0, (config.noise_psd - 30.0) / 10.0) * kRbBandwidthHz;
  s.load_limit = config.load_limit;
  return {std::move(s), std::move(mean_gains)};
}

Scenario generate(const GenConfig& config) {
  return generate_detailed(config).scenario;
}

namespace {

// Max cell load of the singleton baseline's fixed point with demands scaled
// by `scale`, or +inf when the iteration does not settle.
double baseline_max_load(const Scenario& base, const ClusterSet& singles,
                         double scale) {
  Scenario s = base;
  for (UeConfig& ue : s.ues) ue.demand *= scale;
  LoadSolver solver(std::move(s), singles, PowerPolicy::uniform());
  IterationConfig cfg;
  cfg.epsilon = 1e-7;
  cfg.max_iters = 3000;
  const SolveOutcome out = solver.solve(cfg);
  if (out.status == SolveStatus::Optimal ||
      out.status == SolveStatus::InfeasibleCap) {
    double mx = 0.0;
    for (double v : out.rho_star) mx = std::max(mx, v);
    return mx;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

CalibrationResult calibrate_demands(const Scenario& scenario, double target,
                                    double tol) {
  if (!(target > 0.0)) throw std::invalid_argument("target must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");

  const ClusterSet singles = enumerate_singletons(scenario);
  int probes = 0;
  const auto probe = [&](double scale) {
    ++probes;
    return baseline_max_load(scenario, singles, scale);
  };

  // Bracket the target: lo stays at or below it, hi above.
  double lo = 1.0;
  double lo_load = probe(lo);
  double hi = 1.0;
  if (lo_load <= target) {
    for (int i = 0;; ++i) {
      if (i >= 60) {
        throw std::runtime_error(
            "calibration never exceeded the target while doubling demands");
      }
      hi = lo * 2.0;
      const double hi_load = probe(hi);
      if (hi_load > target) break;
      lo = hi;
      lo_load = hi_load;
    }
  } else {
    hi = lo;
    for (int i = 0;; ++i) {
      if (i >= 60) {
        throw std::runtime_error(
            "calibration exceeds the target even at vanishing demand scale " +
            std::to_string(hi));
      }
      lo = hi / 2.0;
      lo_load = probe(lo);
      if (lo_load <= target) break;
      hi = lo;
    }
  }

  // Shrink onto the target from below; the lower end is returned so the
  // result never overshoots.
  while (lo_load < target - tol && hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double mid_load = probe(mid);
    if (mid_load <= target) {
      lo = mid;
      lo_load = mid_load;
    } else {
      hi = mid;
    }
  }

  CalibrationResult result;
  result.scenario = scenario;
  for (UeConfig& ue : result.scenario.ues) ue.demand *= lo;
  result.scale = lo;
  result.achieved_max_load = lo_load;
  result.probes = probes;
  return result;
}

}  // namespace nomaload
