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

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nomaload {

enum class CellKind { Macro, Small };

const char* to_string(CellKind kind);
CellKind cell_kind_from_string(const std::string& name);

/// Static per-cell parameters. Cell ids are 0-based and contiguous.
struct CellConfig {
  int id = 0;
  std::array<double, 2> position{0.0, 0.0};  // meters
  double per_rb_power = 0.0;                 // watts on each resource block
  CellKind kind = CellKind::Macro;

  bool operator==(const CellConfig&) const = default;
};

/// Static per-UE parameters. UE ids live in their own 0-based index space,
/// independent of cell ids.
struct UeConfig {
  int id = 0;
  std::array<double, 2> position{0.0, 0.0};  // meters
  int serving_cell = 0;
  double demand = 0.0;  // bits per second

  bool operator==(const UeConfig&) const = default;
};

/// Immutable network snapshot: cells, UEs, composite linear power gains, and
/// the resource-grid parameters shared by all cells. Safe to share across
/// threads once constructed.
struct Scenario {
  std::vector<CellConfig> cells;
  std::vector<UeConfig> ues;
  /// Row-major n x m matrix of linear power gains (path loss x shadowing x
  /// fading), cell i to UE j at gains[i*m + j]. All entries must be > 0.
  std::vector<double> gains;
  int rb_count = 0;           // resource blocks per cell
  double rb_bandwidth = 0.0;  // Hz per resource block
  double noise_power = 0.0;   // watts per resource block
  double load_limit = 1.0;    // usable fraction of resource blocks, in (0, 1]

  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_ues() const { return static_cast<int>(ues.size()); }

  double gain(int cell, int ue) const {
    return gains[static_cast<std::size_t>(cell) * ues.size() +
                 static_cast<std::size_t>(ue)];
  }

  /// Ids of the UEs served by `cell`, ascending.
  std::vector<int> served_ues(int cell) const;

  bool operator==(const Scenario&) const = default;
};

/// Thrown by load_scenario/save_scenario on I/O, schema, or validation
/// failure.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checks every Scenario invariant and returns one human-readable message per
/// violation. Empty result means the scenario is well formed. Pure.
std::vector<std::string> validate(const Scenario& scenario);

/// Reads a scenario from a JSON file. Throws ScenarioError naming the
/// offending field on parse or schema errors, or listing the violations when
/// the parsed scenario fails validate().
Scenario load_scenario(const std::string& path);

/// Writes the scenario as a single JSON document. `meta_json`, when non-empty,
/// must parse as a JSON object; it is stored under the "meta" key and ignored
/// on load. Round-trips losslessly: load_scenario(path) compares equal to the
/// saved scenario, gains bit-exact.
void save_scenario(const Scenario& scenario, const std::string& path,
                   const std::string& meta_json = "");

}  // namespace nomaload
