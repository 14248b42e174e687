// Copyright 2026 The drcoto Authors
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
#include "drcoto/scenario.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drcoto/error.h"

namespace drcoto {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInvalidInput: return "invalid_input";
    case ErrorCode::kZeroRate: return "zero_rate";
    case ErrorCode::kSpeedViolation: return "speed_violation";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kNoFeasibleStart: return "no_feasible_start";
  }
  return "unknown";
}

OffloadDecision::OffloadDecision(int num_gus, int num_uavs, int num_slots)
    : gus_(num_gus), uavs_(num_uavs), slots_(num_slots) {
  const std::size_t n = static_cast<std::size_t>(num_gus) * num_uavs * num_slots;
  x_.assign(n, 0);
  y_.assign(n, 0);
  z_.assign(n, 0);
}

void OffloadDecision::set_local(int i, int n) {
  for (int j = 0; j < uavs_; ++j) set_raw(i, j, n, false, false, false);
}

void OffloadDecision::compute_on_uav(int i, int j, int n) {
  set_local(i, n);
  set_raw(i, j, n, true, true, false);
}

void OffloadDecision::relay_to_hap(int i, int j, int n) {
  set_local(i, n);
  set_raw(i, j, n, true, false, true);
}

void OffloadDecision::set_raw(int i, int j, int n, bool x, bool y, bool z) {
  const std::size_t k = index(i, j, n);
  x_[k] = x;
  y_[k] = y;
  z_[k] = z;
}

int OffloadDecision::collector(int i, int n) const {
  for (int j = 0; j < uavs_; ++j)
    if (x(i, j, n)) return j;
  return -1;
}

bool OffloadDecision::any_offload() const {
  return std::any_of(x_.begin(), x_.end(), [](std::uint8_t v) { return v != 0; });
}

TrajectoryPlan::TrajectoryPlan(int num_uavs, int num_slots, double altitude)
    : slots_(num_slots), altitude_(altitude),
      points_(num_uavs, std::vector<Vec2>(num_slots + 1)) {}

TrajectoryPlan straight_line_plan(const Scenario& scenario) {
  const int N = scenario.num_slots();
  TrajectoryPlan plan(scenario.num_uavs(), N, scenario.uav_altitude());
  for (int j = 0; j < scenario.num_uavs(); ++j) {
    const Vec2 a = scenario.uavs[j].start.horizontal();
    const Vec2 b = scenario.uavs[j].end.horizontal();
    for (int w = 0; w <= N; ++w) {
      const double t = static_cast<double>(w) / N;
      plan.waypoint(j, w) = a + t * (b - a);
    }
    plan.waypoint(j, N) = b;
  }
  return plan;
}

bool ValidationResult::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::string ValidationResult::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << violations[k].code << ": " << violations[k].message;
  }
  return os.str();
}

namespace {

class Collector {
 public:
  void add(std::string code, std::string message) {
    result.violations.push_back({std::move(code), std::move(message)});
  }
  template <typename... Args>
  void check(bool cond, const char* code, Args&&... parts) {
    if (cond) return;
    std::ostringstream os;
    (os << ... << parts);
    add(code, os.str());
  }
  ValidationResult result;
};

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

bool inside(const Scenario& s, double x, double y, double tol = 0.0) {
  return x >= -tol && x <= s.area_x_m + tol && y >= -tol && y <= s.area_y_m + tol;
}

}  // namespace

ValidationResult validate_scenario(const Scenario& s) {
  Collector c;
  c.check(positive(s.area_x_m) && positive(s.area_y_m), "area", "area dimensions must be > 0");
  c.check(s.time.num_slots >= 1, "time", "num_slots must be >= 1");
  c.check(positive(s.time.slot_len_s), "time", "slot_len must be > 0");
  c.check(std::isfinite(s.min_separation_m) && s.min_separation_m >= 0.0, "separation",
          "min_separation must be >= 0");
  c.check(!s.gus.empty(), "gus", "at least one GU required");
  c.check(!s.uavs.empty(), "uavs", "at least one UAV required");

  for (std::size_t i = 0; i < s.gus.size(); ++i) {
    const GroundUser& g = s.gus[i];
    c.check(is_finite(g.position), "gu_position", "GU ", i, " position not finite");
    c.check(g.position.z == 0.0, "gu_altitude", "GU ", i, " must be on the ground (z = 0)");
    c.check(inside(s, g.position.x, g.position.y), "area", "GU ", i, " outside area");
    c.check(positive(g.cpu_cycles_per_bit) && positive(g.local_cpu_hz) &&
                positive(g.capacitance) && positive(g.tx_power_w) && positive(g.energy_budget_j),
            "gu_params", "GU ", i, " rates, powers and budgets must be > 0");
  }

  const double alt = s.uav_altitude();
  for (std::size_t j = 0; j < s.uavs.size(); ++j) {
    const Uav& u = s.uavs[j];
    c.check(is_finite(u.start) && is_finite(u.end), "uav_position", "UAV ", j,
            " endpoints not finite");
    c.check(positive(u.start.z) && u.start.z == alt && u.end.z == alt, "uav_altitude", "UAV ", j,
            " endpoints must share the fleet altitude");
    c.check(inside(s, u.start.x, u.start.y) && inside(s, u.end.x, u.end.y), "area", "UAV ", j,
            " endpoint outside area");
    c.check(positive(u.cruise_speed_mps), "uav_speed", "UAV ", j, " cruise speed must be > 0");
    c.check(u.quota >= 0, "uav_quota", "UAV ", j, " quota must be >= 0");
    c.check(positive(u.cpu_hz) && positive(u.capacitance) && positive(u.tx_power_w) &&
                positive(u.energy_budget_j),
            "uav_params", "UAV ", j, " rates, powers and budgets must be > 0");
    if (positive(u.cruise_speed_mps) && s.time.num_slots >= 1) {
      const double reach = u.cruise_speed_mps * s.time.slot_len_s * s.time.num_slots;
      c.check(norm(u.end.horizontal() - u.start.horizontal()) <= reach, "uav_reach", "UAV ", j,
              " end not reachable from start within the horizon");
    }
    for (std::size_t k = j + 1; k < s.uavs.size(); ++k) {
      const Uav& v = s.uavs[k];
      c.check(norm(u.start.horizontal() - v.start.horizontal()) >= s.min_separation_m,
              "separation", "UAVs ", j, " and ", k, " start closer than min_separation");
      c.check(norm(u.end.horizontal() - v.end.horizontal()) >= s.min_separation_m, "separation",
              "UAVs ", j, " and ", k, " end closer than min_separation");
    }
  }

  const Hap& h = s.hap;
  c.check(is_finite(h.position) && h.position.z > alt, "hap_position",
          "HAP must sit above the UAV altitude");
  c.check(positive(h.cpu_hz) && positive(h.capacitance) && positive(h.energy_budget_j),
          "hap_params", "HAP rates and budgets must be > 0");
  c.check(h.quota >= 0, "hap_quota", "HAP quota must be >= 0");

  const ChannelParams& ch = s.channel;
  c.check(positive(ch.bandwidth_gu_hz) && positive(ch.bandwidth_uh_hz) &&
              positive(ch.noise_power_w) && positive(ch.carrier_freq_hz) &&
              positive(ch.light_speed_mps) && positive(ch.boltzmann) && positive(ch.noise_temp_k),
          "channel", "bandwidths, noise and frequencies must be > 0");
  c.check(ch.nlos_atten > 0.0 && ch.nlos_atten <= 1.0, "channel", "nlos_atten must be in (0, 1]");
  c.check(std::isfinite(ch.interference_w) && ch.interference_w >= 0.0, "channel",
          "interference must be >= 0");
  c.check(positive(ch.beta0) && positive(ch.pathloss_exp) && positive(ch.antenna_gain) &&
              positive(ch.total_loss) && positive(ch.los_a) && positive(ch.los_b),
          "channel", "gain parameters must be > 0");

  const PropulsionParams& p = s.propulsion;
  c.check(positive(p.blade_power_w) && positive(p.induced_power_w) && positive(p.tip_speed_mps) &&
              positive(p.drag_ratio) && positive(p.air_density) && positive(p.rotor_solidity) &&
              positive(p.rotor_area_m2) && positive(p.mean_rotor_velocity),
          "propulsion", "propulsion parameters must be > 0");
  return c.result;
}

ValidationResult validate_decision(const OffloadDecision& dec, const Scenario& s) {
  Collector c;
  const int I = s.num_gus(), J = s.num_uavs(), N = s.num_slots();
  if (dec.num_gus() != I || dec.num_uavs() != J || dec.num_slots() != N) {
    c.add("shape", "decision dimensions do not match the scenario");
    return c.result;
  }
  for (int n = 0; n < N; ++n) {
    int relayed = 0;
    for (int i = 0; i < I; ++i) {
      int collected = 0;
      for (int j = 0; j < J; ++j) {
        const int x = dec.x(i, j, n), y = dec.y(i, j, n), z = dec.z(i, j, n);
        c.check(y + z == x, "flow_balance", "y + z != x at (", i, ",", j, ",", n, ")");
        collected += x;
        relayed += z;
      }
      c.check(collected <= 1, "single_collector", "GU ", i, " collected by ", collected,
              " UAVs in slot ", n);
    }
    for (int j = 0; j < J; ++j) {
      int computed = 0;
      for (int i = 0; i < I; ++i) computed += dec.y(i, j, n);
      c.check(computed <= s.uavs[j].quota, "uav_quota", "UAV ", j, " computes ", computed,
              " tasks in slot ", n);
    }
    c.check(relayed <= s.hap.quota, "hap_quota", "HAP receives ", relayed, " tasks in slot ", n);
  }
  return c.result;
}

ValidationResult validate_trajectory(const TrajectoryPlan& plan, const Scenario& s,
                                     double rel_tol) {
  Collector c;
  const int J = s.num_uavs(), N = s.num_slots();
  if (plan.num_uavs() != J || plan.num_slots() != N) {
    c.add("shape", "trajectory dimensions do not match the scenario");
    return c.result;
  }
  const double area_tol = rel_tol * std::max(s.area_x_m, s.area_y_m);
  for (int j = 0; j < J; ++j) {
    const Uav& u = s.uavs[j];
    const double step = u.cruise_speed_mps * s.time.slot_len_s;
    c.check(norm(plan.waypoint(j, 0) - u.start.horizontal()) <= area_tol, "endpoint", "UAV ", j,
            " does not start at its start position");
    c.check(norm(plan.waypoint(j, N) - u.end.horizontal()) <= area_tol, "endpoint", "UAV ", j,
            " does not end at its end position");
    for (int w = 0; w <= N; ++w) {
      const Vec2 q = plan.waypoint(j, w);
      c.check(std::isfinite(q.x) && std::isfinite(q.y) && inside(s, q.x, q.y, area_tol), "area",
              "UAV ", j, " waypoint ", w, " outside area");
      if (w > 0) {
        const double d = norm(q - plan.waypoint(j, w - 1));
        c.check(d <= step * (1.0 + rel_tol), "speed", "UAV ", j, " moves ", d, " m in slot ",
                w - 1, " (limit ", step, ")");
      }
    }
  }
  for (int w = 0; w <= N; ++w)
    for (int j = 0; j < J; ++j)
      for (int k = j + 1; k < J; ++k) {
        const double d = norm(plan.waypoint(j, w) - plan.waypoint(k, w));
        c.check(d >= s.min_separation_m * (1.0 - rel_tol), "separation", "UAVs ", j, " and ", k,
                " are ", d, " m apart at waypoint ", w);
      }
  return c.result;
}

}  // namespace drcoto
