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

#include <vector>

#include "nomaload/scenario.hpp"

namespace nomaload {

/// One transmission unit of a cell: either a single UE or an ordered pair
/// sharing the same resource blocks. `first` is the UE with the stronger gain
/// to the serving cell; it cancels the weaker UE's signal before decoding its
/// own. `second` is -1 for singletons.
struct Cluster {
  int cell = 0;
  int first = 0;
  int second = -1;

  bool is_pair() const { return second >= 0; }
  int size() const { return is_pair() ? 2 : 1; }

  bool operator==(const Cluster&) const = default;
};

/// All candidate clusters, grouped by cell. Per cell the order is: singletons
/// by ascending UE id, then pairs in lexicographic order of their served-UE
/// positions. This order is part of the contract; solver output indexes into
/// it.
struct ClusterSet {
  std::vector<std::vector<Cluster>> by_cell;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& v : by_cell) n += v.size();
    return n;
  }
};

/// True when pairing `stronger` and `weaker` (gains to cell `cell`, stronger
/// strictly larger) keeps their gain order at every other cell, so the
/// cancellation at `stronger` survives any interference level:
///   g(cell,stronger) * g(k,weaker) >= g(k,stronger) * g(cell,weaker) for all
///   k != cell.
bool pair_decodable(const Scenario& scenario, int cell, int stronger,
                    int weaker);

/// Candidate clusters for every cell: all singletons plus every pair of
/// co-served UEs that passes pair_decodable. Pairs with equal serving-cell
/// gains are dropped (no strict decoding order exists).
ClusterSet enumerate_clusters(const Scenario& scenario);

/// Singleton-only cluster set: one cluster per UE. This is the orthogonal
/// baseline; every scheme that admits pairs can only do better.
ClusterSet enumerate_singletons(const Scenario& scenario);

/// How a cell's per-RB power is divided between the two UEs of a pair.
enum class PowerFamily {
  Uniform,  // equal split
  Ftpc,     // fractional transmit power control, weaker UE gets more
  Ntt,      // fixed fraction alpha to the stronger UE
};

const char* to_string(PowerFamily family);

/// A power-split family together with the alpha values to search over.
/// Uniform takes no parameter and always has exactly one candidate.
struct PowerPolicy {
  PowerFamily family = PowerFamily::Uniform;
  std::vector<double> grid;

  int candidates() const {
    return grid.empty() ? 1 : static_cast<int>(grid.size());
  }
  double alpha_at(int k) const { return grid.empty() ? 0.5 : grid[k]; }

  static PowerPolicy uniform() { return {PowerFamily::Uniform, {}}; }
  static PowerPolicy ftpc(std::vector<double> grid) {
    return {PowerFamily::Ftpc, std::move(grid)};
  }
  static PowerPolicy ntt(std::vector<double> grid) {
    return {PowerFamily::Ntt, std::move(grid)};
  }
};

/// Per-RB powers assigned to the members of one cluster. For singletons the
/// whole budget goes to `strong` and `weak` is 0. Always sums to the cell
/// budget exactly.
struct PowerSplit {
  double strong = 0.0;
  double weak = 0.0;
};

/// Splits `cell_power` between the cluster members.
///   Uniform: half each (alpha ignored).
///   Ftpc:    strong share g_s^-alpha / (g_s^-alpha + g_w^-alpha),
///            alpha in [0, 1].
///   Ntt:     strong share alpha, alpha in (0, 0.5).
/// Throws std::invalid_argument when alpha is outside the family's range.
PowerSplit split_power(const Cluster& cluster, PowerFamily family,
                       double alpha, double cell_power,
                       const Scenario& scenario);

/// Average interference power a cell transmitting `p` per RB with load `rho`
/// inflicts on a receiver it reaches with gain `g`.
inline double interference(double p, double g, double rho) {
  return p * g * rho;
}

/// SINR of cluster member `ue` under inter-cell loads `loads` (the serving
/// cell's own entry is ignored). The stronger member sees no intra-cluster
/// term; the weaker member sees the stronger member's power, uncancelled.
double sinr(const Cluster& cluster, int ue, const PowerSplit& split,
            const std::vector<double>& loads, const Scenario& scenario);

/// Rate over the whole grid of `rb_count` RBs of width `rb_bandwidth` at the
/// given SINR, bits per second.
double capacity(double sinr_value, int rb_count, double rb_bandwidth);

/// True when, at the given inter-cell loads, the stronger member of the pair
/// still receives the weaker member's signal at least as reliably as the
/// weaker member itself, so cancellation is possible:
///   sum_{k != i} p_k rho_k (g_ih g_kj - g_ij g_kh) <= (g_ij - g_ih) sigma^2
/// with i the serving cell, j the stronger and h the weaker member.
/// Singletons pass trivially. Independent of the power split.
bool check_decoding_condition(const Cluster& cluster,
                              const std::vector<double>& loads,
                              const Scenario& scenario);

}  // namespace nomaload
