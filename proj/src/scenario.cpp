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

#include "nomaload/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nomaload {

using nlohmann::json;

const char* to_string(CellKind kind) {
  return kind == CellKind::Macro ? "macro" : "small";
}

CellKind cell_kind_from_string(const std::string& name) {
  if (name == "macro") return CellKind::Macro;
  if (name == "small") return CellKind::Small;
  throw ScenarioError("unknown cell kind \"" + name +
                      "\" (expected \"macro\" or \"small\")");
}

std::vector<int> Scenario::served_ues(int cell) const {
  std::vector<int> out;
  for (const UeConfig& ue : ues) {
    if (ue.serving_cell == cell) out.push_back(ue.id);
  }
  return out;
}

std::vector<std::string> validate(const Scenario& scenario) {
  std::vector<std::string> violations;
  auto add = [&violations](const std::string& msg) { violations.push_back(msg); };

  const int n = scenario.num_cells();
  const int m = scenario.num_ues();

  if (n == 0) add("scenario must contain at least one cell");
  if (m == 0) add("scenario must contain at least one UE");

  for (int k = 0; k < n; ++k) {
    const CellConfig& cell = scenario.cells[k];
    if (cell.id != k) {
      add("cell at index " + std::to_string(k) + " has id " +
          std::to_string(cell.id) + "; ids must be unique and contiguous 0.." +
          std::to_string(n - 1));
    }
    if (!(cell.per_rb_power > 0.0)) {
      add("cell " + std::to_string(k) + ": per_rb_power must be > 0");
    }
  }

  for (int k = 0; k < m; ++k) {
    const UeConfig& ue = scenario.ues[k];
    if (ue.id != k) {
      add("ue at index " + std::to_string(k) + " has id " +
          std::to_string(ue.id) + "; ids must be unique and contiguous 0.." +
          std::to_string(m - 1));
    }
    if (!(ue.demand > 0.0)) {
      add("ue " + std::to_string(k) + ": demand must be > 0");
    }
    if (ue.serving_cell < 0 || ue.serving_cell >= n) {
      add("ue " + std::to_string(k) + ": serving_cell " +
          std::to_string(ue.serving_cell) + " is not a valid cell id");
    }
  }

  const std::size_t expected = static_cast<std::size_t>(n) * m;
  if (scenario.gains.size() != expected) {
    add("gains must be an " + std::to_string(n) + " x " + std::to_string(m) +
        " matrix (" + std::to_string(expected) + " entries, got " +
        std::to_string(scenario.gains.size()) + ")");
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const double g = scenario.gain(i, j);
        if (!std::isfinite(g)) {
          add("gain (" + std::to_string(i) + "," + std::to_string(j) +
              ") must be finite");
        } else if (!(g > 0.0)) {
          add("gain (" + std::to_string(i) + "," + std::to_string(j) +
              ") must be > 0");
        }
      }
    }
  }

  // Every cell must serve at least one UE.
  std::vector<int> served(static_cast<std::size_t>(n), 0);
  for (const UeConfig& ue : scenario.ues) {
    if (ue.serving_cell >= 0 && ue.serving_cell < n) ++served[ue.serving_cell];
  }
  for (int i = 0; i < n; ++i) {
    if (served[i] == 0) add("cell " + std::to_string(i) + " serves no UE");
  }

  if (scenario.rb_count < 1) add("rb.count must be >= 1");
  if (!(scenario.rb_bandwidth > 0.0)) add("rb.bandwidth_hz must be > 0");
  if (!(scenario.noise_power > 0.0)) add("noise_w_per_rb must be > 0");
  if (!(scenario.load_limit > 0.0) || scenario.load_limit > 1.0) {
    add("load_limit must be in (0, 1]");
  }

  return violations;
}

namespace {

const json& require(const json& node, const char* key, const std::string& ctx) {
  auto it = node.find(key);
  if (it == node.end()) {
    throw ScenarioError("scenario file: missing field \"" +
                        (ctx.empty() ? key : ctx + "." + key) + "\"");
  }
  return *it;
}

template <typename T>
T field(const json& node, const char* key, const std::string& ctx) {
  try {
    return require(node, key, ctx).get<T>();
  } catch (const json::type_error& e) {
    throw ScenarioError("scenario file: field \"" +
                        (ctx.empty() ? key : ctx + "." + key) +
                        "\" has wrong type: " + e.what());
  }
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario file " + path + ": " + e.what());
  }

  Scenario s;
  const json& cells = require(doc, "cells", "");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string ctx = "cells[" + std::to_string(k) + "]";
    const json& c = cells[k];
    CellConfig cell;
    cell.id = field<int>(c, "id", ctx);
    auto pos = field<std::array<double, 2>>(c, "position", ctx);
    cell.position = pos;
    cell.per_rb_power = field<double>(c, "per_rb_power", ctx);
    cell.kind = cell_kind_from_string(field<std::string>(c, "kind", ctx));
    s.cells.push_back(cell);
  }

  const json& ues = require(doc, "ues", "");
  for (std::size_t k = 0; k < ues.size(); ++k) {
    const std::string ctx = "ues[" + std::to_string(k) + "]";
    const json& u = ues[k];
    UeConfig ue;
    ue.id = field<int>(u, "id", ctx);
    ue.position = field<std::array<double, 2>>(u, "position", ctx);
    ue.serving_cell = field<int>(u, "serving_cell", ctx);
    ue.demand = field<double>(u, "demand", ctx);
    s.ues.push_back(ue);
  }

  const json& gains = require(doc, "gains", "");
  if (!gains.is_array()) {
    throw ScenarioError("scenario file: field \"gains\" must be an array of rows");
  }
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const json& row = gains[i];
    if (!row.is_array()) {
      throw ScenarioError("scenario file: gains[" + std::to_string(i) +
                          "] must be an array");
    }
    if (i > 0 && row.size() != gains[0].size()) {
      throw ScenarioError("scenario file: gains rows have unequal lengths");
    }
    for (const json& v : row) s.gains.push_back(v.get<double>());
  }

  const json& rb = require(doc, "rb", "");
  s.rb_count = field<int>(rb, "count", "rb");
  s.rb_bandwidth = field<double>(rb, "bandwidth_hz", "rb");
  s.noise_power = field<double>(doc, "noise_w_per_rb", "");
  s.load_limit = field<double>(doc, "load_limit", "");

  if (!gains.empty() &&
      (gains.size() != s.cells.size() ||
       gains[0].size() != s.ues.size())) {
    throw ScenarioError(
        "scenario file: gains must be " + std::to_string(s.cells.size()) +
        " x " + std::to_string(s.ues.size()) + ", got " +
        std::to_string(gains.size()) + " x " +
        std::to_string(gains.empty() ? 0 : gains[0].size()));
  }

  const std::vector<std::string> violations = validate(s);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "scenario file " << path << " failed validation:";
    for (const std::string& v : violations) msg << "\n  - " << v;
    throw ScenarioError(msg.str());
  }
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path,
                   const std::string& meta_json) {
  json doc;
  doc["cells"] = json::array();
  for (const CellConfig& cell : scenario.cells) {
    doc["cells"].push_back({{"id", cell.id},
                            {"position", cell.position},
                            {"per_rb_power", cell.per_rb_power},
                            {"kind", to_string(cell.kind)}});
  }
  doc["ues"] = json::array();
  for (const UeConfig& ue : scenario.ues) {
    doc["ues"].push_back({{"id", ue.id},
                          {"position", ue.position},
                          {"serving_cell", ue.serving_cell},
                          {"demand", ue.demand}});
  }
  json rows = json::array();
  const int m = scenario.num_ues();
  for (int i = 0; i < scenario.num_cells(); ++i) {
    json row = json::array();
    for (int j = 0; j < m; ++j) row.push_back(scenario.gain(i, j));
    rows.push_back(std::move(row));
  }
  doc["gains"] = std::move(rows);
  doc["rb"] = {{"count", scenario.rb_count},
               {"bandwidth_hz", scenario.rb_bandwidth}};
  doc["noise_w_per_rb"] = scenario.noise_power;
  doc["load_limit"] = scenario.load_limit;
  if (!meta_json.empty()) {
    try {
      doc["meta"] = json::parse(meta_json);
    } catch (const json::parse_error& e) {
      throw ScenarioError(std::string("save_scenario: meta is not valid JSON: ") +
                          e.what());
    }
  }

  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot open file for writing: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw ScenarioError("failed writing scenario file: " + path);
}

}  // namespace nomaload
