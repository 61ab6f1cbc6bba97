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

#include "nomaload/scenario.hpp"

namespace nomaload {

/// Resource grid shared by every generated scenario.
inline constexpr int kRbCount = 100;
inline constexpr double kRbBandwidthHz = 180e3;

/// Antenna heights used by the path-loss model, meters.
inline constexpr double kMacroHeight = 30.0;
inline constexpr double kSmallHeight = 10.0;
inline constexpr double kUeHeight = 1.5;

/// Parameters of one synthetic deployment: a macro cell at the origin plus
/// small cells on a ring at half the macro radius, and UEs dropped uniformly
/// in the macro disk.
struct GenConfig {
  std::uint64_t seed = 1;
  int num_small_cells = 6;
  int num_ues = 70;
  double macro_radius = 500.0;   // meters
  double small_radius = 100.0;   // meters, small-cell nominal coverage
  double carrier_freq = 2e9;     // Hz
  double shadowing_sigma_macro = 8.0;  // dB
  double shadowing_sigma_small = 4.0;  // dB
  double macro_power = 0.8;      // watts per resource block
  double small_power = 0.1;      // watts per resource block
  double noise_psd = -173.0;     // dBm/Hz
  double load_limit = 1.0;
};

/// Urban COST-231-Hata path loss in dB for a link of `distance_m` meters
/// (clamped below at 10 m) from a base station at `base_height_m` to a UE at
/// kUeHeight, at carrier `carrier_freq_hz`.
double path_loss_db(double distance_m, double base_height_m,
                    double carrier_freq_hz);

/// A generated scenario plus the fading-free mean gains the UEs were
/// associated by (row-major, like Scenario::gains).
struct GeneratedScenario {
  Scenario scenario;
  std::vector<double> mean_gains;
};

/// Draws a deployment. Composite gain = path loss x log-normal shadowing x
/// unit-mean Rayleigh fading power, all linear. Each UE attaches to the cell
/// with the strongest fading-free gain. Draws are redone from scratch (same
/// stream) while any cell ends up with no UEs; after 200 failed attempts
/// throws std::runtime_error. Deterministic given the config. Demands are
/// 1 Mbit/s times U(0.5, 1.5) per UE.
GeneratedScenario generate_detailed(const GenConfig& config);

/// generate_detailed without the mean gains.
Scenario generate(const GenConfig& config);

struct CalibrationResult {
  Scenario scenario;          // input scenario with demands rescaled
  double scale = 0.0;         // applied demand multiplier
  double achieved_max_load = 0.0;  // baseline max load at that scale
  int probes = 0;             // fixed-point solves spent
};

/// Rescales all demands by one factor so that the singleton-only baseline's
/// fixed point has max cell load just below `target`: within [target - tol,
/// target]. Staying at or below target keeps the calibrated scenario
/// feasible whenever the load limit is at least `target`. Throws
/// std::runtime_error when no bracket exists.
CalibrationResult calibrate_demands(const Scenario& scenario, double target,
                                    double tol = 1e-3);

}  // namespace nomaload
