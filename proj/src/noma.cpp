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

#include "nomaload/noma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nomaload {

const char* to_string(PowerFamily family) {
  switch (family) {
    case PowerFamily::Uniform:
      return "uniform";
    case PowerFamily::Ftpc:
      return "ftpc";
    case PowerFamily::Ntt:
      return "ntt";
  }
  return "unknown";
}

bool pair_decodable(const Scenario& scenario, int cell, int stronger,
                    int weaker) {
  const double gj = scenario.gain(cell, stronger);
  const double gh = scenario.gain(cell, weaker);
  if (!(gj > gh)) return false;
  for (int k = 0; k < scenario.num_cells(); ++k) {
    if (k == cell) continue;
    // Cross-multiplied form of g(cell,j)/g(cell,h) >= g(k,j)/g(k,h); all
    // gains are positive so no sign flip.
    if (gj * scenario.gain(k, weaker) < scenario.gain(k, stronger) * gh) {
      return false;
    }
  }
  return true;
}

ClusterSet enumerate_clusters(const Scenario& scenario) {
  ClusterSet set;
  set.by_cell.resize(scenario.num_cells());
  for (int i = 0; i < scenario.num_cells(); ++i) {
    const std::vector<int> served = scenario.served_ues(i);
    for (int u : served) set.by_cell[i].push_back({i, u, -1});
    for (std::size_t a = 0; a + 1 < served.size(); ++a) {
      for (std::size_t b = a + 1; b < served.size(); ++b) {
        const double ga = scenario.gain(i, served[a]);
        const double gb = scenario.gain(i, served[b]);
        if (ga == gb) continue;  // no strict decoding order
        const int stronger = ga > gb ? served[a] : served[b];
        const int weaker = ga > gb ? served[b] : served[a];
        if (pair_decodable(scenario, i, stronger, weaker)) {
          set.by_cell[i].push_back({i, stronger, weaker});
        }
      }
    }
  }
  return set;
}

ClusterSet enumerate_singletons(const Scenario& scenario) {
  ClusterSet set;
  set.by_cell.resize(scenario.num_cells());
  for (int i = 0; i < scenario.num_cells(); ++i) {
    for (int u : scenario.served_ues(i)) set.by_cell[i].push_back({i, u, -1});
  }
  return set;
}

PowerSplit split_power(const Cluster& cluster, PowerFamily family,
                       double alpha, double cell_power,
                       const Scenario& scenario) {
  switch (family) {
    case PowerFamily::Uniform:
      break;
    case PowerFamily::Ftpc:
      if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("ftpc alpha must be in [0, 1], got " +
                                    std::to_string(alpha));
      }
      break;
    case PowerFamily::Ntt:
      if (!(alpha > 0.0 && alpha < 0.5)) {
        throw std::invalid_argument("ntt alpha must be in (0, 0.5), got " +
                                    std::to_string(alpha));
      }
      break;
  }
  if (!cluster.is_pair()) return {cell_power, 0.0};

  double strong = 0.0;
  switch (family) {
    case PowerFamily::Uniform:
      strong = 0.5 * cell_power;
      break;
    case PowerFamily::Ftpc: {
      const double gs = std::pow(scenario.gain(cluster.cell, cluster.first),
                                 -alpha);
      const double gw = std::pow(scenario.gain(cluster.cell, cluster.second),
                                 -alpha);
      strong = cell_power * gs / (gs + gw);
      break;
    }
    case PowerFamily::Ntt:
      strong = alpha * cell_power;
      break;
  }
  // Weak share by subtraction so the two always sum to the budget exactly.
  return {strong, cell_power - strong};
}

double sinr(const Cluster& cluster, int ue, const PowerSplit& split,
            const std::vector<double>& loads, const Scenario& scenario) {
  const int i = cluster.cell;
  const double g = scenario.gain(i, ue);

  double own = 0.0;
  double intra = 0.0;
  if (ue == cluster.first) {
    own = split.strong * g;
  } else if (ue == cluster.second) {
    own = split.weak * g;
    intra = split.strong * g;  // the stronger member's signal, uncancelled
  } else {
    throw std::invalid_argument("ue " + std::to_string(ue) +
                                " is not a member of the cluster");
  }

  double inter = 0.0;
  for (int k = 0; k < scenario.num_cells(); ++k) {
    if (k == i) continue;
    inter += interference(scenario.cells[k].per_rb_power, scenario.gain(k, ue),
                          loads[k]);
  }
  return own / (intra + inter + scenario.noise_power);
}

double capacity(double sinr_value, int rb_count, double rb_bandwidth) {
  return rb_count * rb_bandwidth * std::log2(1.0 + sinr_value);
}

bool check_decoding_condition(const Cluster& cluster,
                              const std::vector<double>& loads,
                              const Scenario& scenario) {
  if (!cluster.is_pair()) return true;
  const int i = cluster.cell;
  const double gij = scenario.gain(i, cluster.first);
  const double gih = scenario.gain(i, cluster.second);
  double lhs = 0.0;
  for (int k = 0; k < scenario.num_cells(); ++k) {
    if (k == i) continue;
    const double gkj = scenario.gain(k, cluster.first);
    const double gkh = scenario.gain(k, cluster.second);
    lhs += scenario.cells[k].per_rb_power * loads[k] * (gih * gkj - gij * gkh);
  }
  return lhs <= (gij - gih) * scenario.noise_power;
}

}  // namespace nomaload
