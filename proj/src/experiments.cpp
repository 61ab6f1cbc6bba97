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

#include "nomaload/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nomaload {

double metric(const std::string& name, const LoadVector& loads) {
  if (name == "sum_load") {
    double s = 0.0;
    for (double v : loads) s += v;
    return s;
  }
  if (name == "max_load") {
    double mx = 0.0;
    for (double v : loads) mx = std::max(mx, v);
    return mx;
  }
  throw std::invalid_argument("unknown metric \"" + name +
                              "\" (want sum_load or max_load)");
}

double rate_efficiency(const Scenario& scenario, const LoadVector& loads) {
  double demand = 0.0;
  for (const UeConfig& ue : scenario.ues) demand += ue.demand;
  return demand / (scenario.rb_count * metric("sum_load", loads));
}

std::pair<ClusterSet, PowerPolicy> policy_setup(
    const std::string& policy, const Scenario& scenario,
    const std::vector<double>& ftpc_grid,
    const std::vector<double>& ntt_grid) {
  if (policy == "oma") {
    return {enumerate_singletons(scenario), PowerPolicy::uniform()};
  }
  if (policy == "uniform") {
    return {enumerate_clusters(scenario), PowerPolicy::uniform()};
  }
  if (policy == "ftpc") {
    return {enumerate_clusters(scenario), PowerPolicy::ftpc(ftpc_grid)};
  }
  if (policy == "ntt") {
    return {enumerate_clusters(scenario), PowerPolicy::ntt(ntt_grid)};
  }
  throw std::invalid_argument("unknown policy \"" + policy +
                              "\" (want oma, uniform, ftpc, or ntt)");
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// RFC 4180: quote a field only when it contains a delimiter, quote, or
// newline. Current fields never do, but the writer should not depend on it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path,
              bool include_timings) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "seed,policy,load_limit,num_ues,status,sum_load,max_load,"
         "rate_efficiency,iterations";
  if (include_timings) out << ",wall_time_s";
  out << '\n';
  for (const ResultRow& r : rows) {
    out << r.seed << ',' << csv_field(r.policy) << ','
        << format_double(r.load_limit) << ',' << r.num_ues << ','
        << csv_field(r.status) << ',' << format_double(r.sum_load) << ','
        << format_double(r.max_load) << ','
        << format_double(r.rate_efficiency) << ',' << r.iterations;
    if (include_timings) out << ',' << format_double(r.wall_time_s);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing: " + path);
}

std::vector<ResultRow> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  const std::vector<std::string> header = split_csv_line(line);
  const auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::runtime_error(path + ": missing CSV column \"" + name + "\"");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_seed = column("seed");
  const std::size_t c_policy = column("policy");
  const std::size_t c_limit = column("load_limit");
  const std::size_t c_ues = column("num_ues");
  const std::size_t c_status = column("status");
  const std::size_t c_sum = column("sum_load");
  const std::size_t c_max = column("max_load");
  const std::size_t c_rate = column("rate_efficiency");
  const std::size_t c_iters = column("iterations");
  const bool has_time =
      std::find(header.begin(), header.end(), "wall_time_s") != header.end();
  const std::size_t c_time =
      has_time ? column("wall_time_s") : std::size_t{0};

  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() < header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " + std::to_string(f.size()));
    }
    try {
      ResultRow r;
      r.seed = std::stoull(f[c_seed]);
      r.policy = f[c_policy];
      r.load_limit = std::stod(f[c_limit]);
      r.num_ues = std::stoi(f[c_ues]);
      r.status = f[c_status];
      r.sum_load = std::stod(f[c_sum]);
      r.max_load = std::stod(f[c_max]);
      r.rate_efficiency = std::stod(f[c_rate]);
      r.iterations = std::stoi(f[c_iters]);
      if (has_time) r.wall_time_s = std::stod(f[c_time]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad field: " + e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  std::vector<ResultRow> rows;
  for (std::uint64_t seed : spec.seeds) {
    for (int ues : spec.ue_counts) {
      for (double limit : spec.load_limits) {
        GenConfig gen = spec.base;
        gen.seed = seed;
        gen.num_ues = ues;
        gen.load_limit = limit;
        Scenario scenario = generate(gen);
        if (spec.calibrate) {
          scenario = calibrate_demands(scenario, limit, spec.calibration_tol)
                         .scenario;
        }
        for (const std::string& policy : spec.policies) {
          auto [clusters, power] =
              policy_setup(policy, scenario, spec.ftpc_grid, spec.ntt_grid);
          LoadSolver solver(scenario, std::move(clusters), std::move(power));
          const auto t0 = std::chrono::steady_clock::now();
          const SolveOutcome out = solver.solve(spec.iteration);
          const auto t1 = std::chrono::steady_clock::now();

          ResultRow r;
          r.seed = seed;
          r.policy = policy;
          r.load_limit = limit;
          r.num_ues = ues;
          r.status = to_string(out.status);
          r.sum_load = metric("sum_load", out.rho_star);
          r.max_load = metric("max_load", out.rho_star);
          r.rate_efficiency =
              out.status == SolveStatus::Optimal
                  ? rate_efficiency(scenario, out.rho_star)
                  : std::numeric_limits<double>::quiet_NaN();
          r.iterations = out.iterations;
          r.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
          rows.push_back(std::move(r));
        }
      }
    }
  }
  return rows;
}

std::vector<ComparisonRow> compare_to_baseline(
    const std::vector<ResultRow>& rows, const std::string& baseline) {
  using Key = std::tuple<std::uint64_t, double, int>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  for (const ResultRow& r : rows) {
    groups[{r.seed, r.load_limit, r.num_ues}].push_back(&r);
  }

  struct Sums {
    int n = 0;
    double sum_load = 0.0, max_load = 0.0, rate = 0.0;
  };
  std::map<std::string, Sums> agg;
  std::vector<std::string> order;  // first-seen policy order

  for (const auto& [key, group] : groups) {
    const ResultRow* base = nullptr;
    for (const ResultRow* r : group) {
      if (r->policy == baseline) base = r;
    }
    if (base == nullptr || base->status != "optimal") continue;
    for (const ResultRow* r : group) {
      if (r->policy == baseline || r->status != "optimal") continue;
      if (agg.find(r->policy) == agg.end()) order.push_back(r->policy);
      Sums& s = agg[r->policy];
      ++s.n;
      s.sum_load += 100.0 * (base->sum_load - r->sum_load) / base->sum_load;
      s.max_load += 100.0 * (base->max_load - r->max_load) / base->max_load;
      s.rate += 100.0 * (r->rate_efficiency - base->rate_efficiency) /
                base->rate_efficiency;
    }
  }

  std::vector<ComparisonRow> out;
  for (const std::string& policy : order) {
    const Sums& s = agg[policy];
    ComparisonRow c;
    c.policy = policy;
    c.scenarios = s.n;
    if (s.n > 0) {
      c.mean_sum_load_reduction_pct = s.sum_load / s.n;
      c.mean_max_load_reduction_pct = s.max_load / s.n;
      c.mean_rate_eff_improvement_pct = s.rate / s.n;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace nomaload
