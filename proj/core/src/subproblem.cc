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
#include "drcoto/subproblem.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "drcoto/cost_model.h"
#include "drcoto/error.h"
#include "drcoto/physics.h"
#include "drcoto/units.h"

namespace drcoto {

namespace {

constexpr int kPolygonSides = 16;

// Value and gradient (with respect to one waypoint) of a trajectory-dependent
// term.
struct Term {
  double value = 0.0;
  Vec2 grad;
  int uav = -1;
  int waypoint = -1;  // -1 when the term does not move
};

struct CellTerms {
  Term delay;
  Term gu_energy;
  Term uav_energy;  // relay + compute, charged to the collector
};

CellTerms cell_terms(int i, int n, double bits, const OffloadDecision& dec,
                     const TrajectoryPlan& traj, const Scenario& s) {
  const GroundUser& gu = s.gus[i];
  const double cycles = bits * gu.cpu_cycles_per_bit;
  CellTerms t;
  const int j = dec.collector(i, n);
  if (j < 0) {
    t.delay.value = cycles / gu.local_cpu_hz;
    t.gu_energy.value = gu.capacitance * cycles * gu.local_cpu_hz * gu.local_cpu_hz;
    return t;
  }
  const Uav& uav = s.uavs[j];
  const int w = n + 1;
  const Position3D q = traj.serving_position(j, n);
  const InverseRate ug = inverse_rate_gu_uav(gu.position, q, s.channel, gu.tx_power_w);
  t.delay = {bits * ug.value, bits * ug.grad, j, w};
  t.gu_energy = {gu.tx_power_w * bits * ug.value, (gu.tx_power_w * bits) * ug.grad, j, w};
  t.uav_energy = {0.0, {}, j, w};
  if (dec.y(i, j, n)) {
    t.delay.value += cycles / uav.cpu_hz;
    t.uav_energy.value += uav.capacitance * cycles * uav.cpu_hz * uav.cpu_hz;
  }
  if (dec.z(i, j, n)) {
    const InverseRate uh = inverse_rate_uav_hap(q, s.hap.position, s.channel, uav.tx_power_w);
    t.delay.value += bits * uh.value + cycles / s.hap.cpu_hz;
    t.delay.grad = t.delay.grad + bits * uh.grad;
    t.uav_energy.value += uav.tx_power_w * bits * uh.value;
    t.uav_energy.grad = (uav.tx_power_w * bits) * uh.grad;
  }
  return t;
}

// A linear function of the displacement variables plus a constant.
struct Affine {
  double value = 0.0;
  std::vector<std::pair<int, double>> coef;
  void add(int var, double a) {
    if (var < 0 || a == 0.0) return;
    for (auto& c : coef)
      if (c.first == var) {
        c.second += a;
        return;
      }
    coef.emplace_back(var, a);
  }
};

struct Layout {
  int J = 0, N = 0;
  int free() const { return N - 1; }
  bool movable(int w) const { return w >= 1 && w <= N - 1; }
  int vx(int j, int w) const { return movable(w) ? 2 * (j * free() + (w - 1)) : -1; }
  int vy(int j, int w) const { return movable(w) ? vx(j, w) + 1 : -1; }
  int count() const { return 2 * J * free(); }
};

void add_term(Affine& a, const Term& t, const Layout& lay) {
  a.value += t.value;
  if (t.uav < 0) return;
  a.add(lay.vx(t.uav, t.waypoint), t.grad.x);
  a.add(lay.vy(t.uav, t.waypoint), t.grad.y);
}

double flight_slope(const Uav& uav, const Scenario& s) {
  const double p_fly = propulsion_power(uav.cruise_speed_mps, s.propulsion);
  return (p_fly - hover_power(s.propulsion)) / uav.cruise_speed_mps;
}

void add_flight(Affine& a, int j, const TrajectoryPlan& traj, const Scenario& s,
                const Layout& lay) {
  const Uav& uav = s.uavs[j];
  const double slope = flight_slope(uav, s);
  for (int w = 1; w <= s.num_slots(); ++w) {
    a.value += flight_energy(j, w, traj, s);
    const Vec2 d = traj.waypoint(j, w) - traj.waypoint(j, w - 1);
    const double len = norm(d);
    if (len <= 0.0) continue;
    const Vec2 g = (slope / len) * d;
    a.add(lay.vx(j, w), g.x);
    a.add(lay.vy(j, w), g.y);
    a.add(lay.vx(j, w - 1), -g.x);
    a.add(lay.vy(j, w - 1), -g.y);
  }
}

double box_max(const Affine& a, const LpProblem& lp) {
  double s = 0.0;
  for (const auto& [v, c] : a.coef) s += std::max(c * lp.lower[v], c * lp.upper[v]);
  return s;
}

}  // namespace

SpObjective sp_objective(const OffloadDecision& dec, const TrajectoryPlan& traj,
                         const Scenario& scenario, const std::vector<double>& gu_bits,
                         double penalty) {
  const ExpectedCosts c = expected_costs(dec, traj, scenario, gu_bits);
  SpObjective out;
  out.delay = c.total_delay;
  bool feasible = true;
  auto charge = [&](double value, double budget) {
    const double v = value - budget;
    if (v > 0.0) {
      out.slack += v;
      if (v > 1e-9 * std::max(1.0, std::abs(budget))) feasible = false;
    }
  };
  for (double d : c.delay) charge(d, scenario.time.slot_len_s);
  for (std::size_t i = 0; i < c.gu_energy.size(); ++i)
    charge(c.gu_energy[i], scenario.gus[i].energy_budget_j);
  for (std::size_t j = 0; j < c.uav_energy.size(); ++j)
    charge(c.uav_energy[j], scenario.uavs[j].energy_budget_j);
  out.value = out.delay + penalty * out.slack;
  out.feasible = feasible;
  return out;
}

std::vector<double> delay_gradient(const OffloadDecision& dec, const TrajectoryPlan& traj,
                                   const Scenario& scenario, const std::vector<double>& gu_bits) {
  const int I = scenario.num_gus(), J = scenario.num_uavs(), N = scenario.num_slots();
  std::vector<double> g(static_cast<std::size_t>(2) * J * (N + 1), 0.0);
  for (int i = 0; i < I; ++i)
    for (int n = 0; n < N; ++n) {
      const CellTerms t = cell_terms(i, n, gu_bits[i], dec, traj, scenario);
      if (t.delay.uav < 0) continue;
      const std::size_t k = 2 * (static_cast<std::size_t>(t.delay.uav) * (N + 1) + t.delay.waypoint);
      g[k] += t.delay.grad.x;
      g[k + 1] += t.delay.grad.y;
    }
  return g;
}

SpLinearization linearize_sp(const TrajectoryPlan& ref, const OffloadDecision& dec,
                             const Scenario& s, const std::vector<double>& gu_bits,
                             double trust_radius, const ScaOptions& options) {
  const int I = s.num_gus(), J = s.num_uavs(), N = s.num_slots();
  const Layout lay{J, N};
  const double tau = s.time.slot_len_s;
  SpLinearization out;
  out.num_uavs = J;
  out.num_slots = N;
  LpProblem& lp = out.lp;
  lp.sense = Sense::kMinimize;

  const int nd = lay.count();
  lp.objective.assign(nd, 0.0);
  lp.lower.assign(nd, 0.0);
  lp.upper.assign(nd, 0.0);
  for (int j = 0; j < J; ++j)
    for (int w = 1; w < N; ++w) {
      const Vec2 q = ref.waypoint(j, w);
      const int vx = lay.vx(j, w), vy = lay.vy(j, w);
      lp.lower[vx] = std::max(-trust_radius, -q.x);
      lp.upper[vx] = std::min(trust_radius, s.area_x_m - q.x);
      lp.lower[vy] = std::max(-trust_radius, -q.y);
      lp.upper[vy] = std::min(trust_radius, s.area_y_m - q.y);
      lp.lower[vx] = std::min(lp.lower[vx], 0.0);
      lp.lower[vy] = std::min(lp.lower[vy], 0.0);
      lp.upper[vx] = std::max(lp.upper[vx], 0.0);
      lp.upper[vy] = std::max(lp.upper[vy], 0.0);
    }

  // Budget rows with their linearizations.
  Affine objective;
  std::vector<Affine> gu_energy(I), uav_energy(J);
  std::vector<std::pair<Affine, std::string>> budget_rows;
  for (int i = 0; i < I; ++i)
    for (int n = 0; n < N; ++n) {
      const CellTerms t = cell_terms(i, n, gu_bits[i], dec, ref, s);
      add_term(objective, t.delay, lay);
      add_term(gu_energy[i], t.gu_energy, lay);
      if (t.uav_energy.uav >= 0) add_term(uav_energy[t.uav_energy.uav], t.uav_energy, lay);
      Affine d;
      add_term(d, t.delay, lay);
      d.value -= tau;
      budget_rows.emplace_back(std::move(d), "delay gu " + std::to_string(i) + " slot " +
                                                 std::to_string(n));
    }
  for (int i = 0; i < I; ++i) {
    gu_energy[i].value -= s.gus[i].energy_budget_j;
    budget_rows.emplace_back(std::move(gu_energy[i]), "energy gu " + std::to_string(i));
  }
  for (int j = 0; j < J; ++j) {
    add_flight(uav_energy[j], j, ref, s, lay);
    uav_energy[j].value -= s.uavs[j].energy_budget_j;
    budget_rows.emplace_back(std::move(uav_energy[j]), "energy uav " + std::to_string(j));
  }

  out.gradient.assign(nd, 0.0);
  for (const auto& [v, c] : objective.coef) {
    lp.objective[v] += c;
    out.gradient[v] += c;
  }
  out.constant = objective.value;
  out.model_at_ref = objective.value;

  std::vector<double> zero(nd, 0.0);
  for (auto& [row, tag] : budget_rows) {
    const double viol = std::max(row.value, 0.0);
    if (row.coef.empty()) {
      out.constant += options.penalty * viol;
      out.model_at_ref += options.penalty * viol;
      continue;
    }
    if (row.value + box_max(row, lp) <= 0.0) continue;
    const int slack = lp.add_variable(options.penalty, 0.0, kInf);
    std::vector<double> coef(lp.num_vars(), 0.0);
    for (const auto& [v, c] : row.coef) coef[v] = c;
    coef[slack] = -1.0;
    lp.add_row(std::move(coef), Relation::kLessEqual, -row.value);
    out.row_tags.push_back(tag);
    out.model_at_ref += options.penalty * viol;
  }

  // Speed: inscribed regular polygon around each segment.
  for (int j = 0; j < J; ++j) {
    const double reach = s.uavs[j].cruise_speed_mps * tau *
                         std::cos(units::kPi / kPolygonSides) * (1.0 - options.speed_margin);
    for (int w = 1; w <= N; ++w) {
      if (!lay.movable(w) && !lay.movable(w - 1)) continue;
      const Vec2 d = ref.waypoint(j, w) - ref.waypoint(j, w - 1);
      for (int k = 0; k < kPolygonSides; ++k) {
        const double phi = 2.0 * units::kPi * k / kPolygonSides;
        const Vec2 nk{std::cos(phi), std::sin(phi)};
        Affine a;
        a.add(lay.vx(j, w), nk.x);
        a.add(lay.vy(j, w), nk.y);
        a.add(lay.vx(j, w - 1), -nk.x);
        a.add(lay.vy(j, w - 1), -nk.y);
        const double rhs = reach - dot(nk, d);
        if (box_max(a, lp) <= rhs) continue;
        std::vector<double> coef(lp.num_vars(), 0.0);
        for (const auto& [v, c] : a.coef) coef[v] = c;
        lp.add_row(std::move(coef), Relation::kLessEqual, rhs);
        out.row_tags.push_back("speed uav " + std::to_string(j) + " segment " + std::to_string(w));
      }
    }
  }

  // Separation: supporting half-plane of the exclusion disc at the reference.
  for (int w = 1; w < N; ++w)
    for (int j = 0; j < J; ++j)
      for (int k = j + 1; k < J; ++k) {
        const Vec2 d = ref.waypoint(j, w) - ref.waypoint(k, w);
        const double len = norm(d);
        const Vec2 u = len > 0.0 ? (1.0 / len) * d : Vec2{1.0, 0.0};
        Affine a;
        a.add(lay.vx(j, w), -u.x);
        a.add(lay.vy(j, w), -u.y);
        a.add(lay.vx(k, w), u.x);
        a.add(lay.vy(k, w), u.y);
        const double rhs = dot(u, d) - s.min_separation_m;  // -u.(dj - dk) <= rhs
        if (box_max(a, lp) <= rhs) continue;
        std::vector<double> coef(lp.num_vars(), 0.0);
        for (const auto& [v, c] : a.coef) coef[v] = c;
        lp.add_row(std::move(coef), Relation::kLessEqual, rhs);
        out.row_tags.push_back("separation " + std::to_string(j) + "-" + std::to_string(k) +
                               " waypoint " + std::to_string(w));
      }
  return out;
}

SpResult solve_sp(const OffloadDecision& dec, const std::vector<double>& gu_bits,
                  const TrajectoryPlan& traj_init, const Scenario& scenario,
                  const ScaOptions& options) {
  SpResult res;
  res.plan = traj_init;
  res.objective = sp_objective(dec, res.plan, scenario, gu_bits, options.penalty);
  const int J = scenario.num_uavs(), N = scenario.num_slots();
  if (N < 2) return res;
  double rho = 0.5 * scenario.uavs.front().cruise_speed_mps * scenario.time.slot_len_s;
  for (const Uav& u : scenario.uavs) rho = std::min(rho, 0.5 * u.cruise_speed_mps * scenario.time.slot_len_s);

  while (res.lp_solves < options.max_iters) {
    const SpLinearization lin = linearize_sp(res.plan, dec, scenario, gu_bits, rho, options);
    const LpSolution sol = solve_lp(lin.lp, options.lp);
    ++res.lp_solves;
    if (sol.status == LpStatus::kInfeasible)
      throw Error(ErrorCode::kInfeasible,
                  "linearized trajectory subproblem infeasible; endpoints may be too far apart");
    if (sol.status != LpStatus::kOptimal)
      throw Error(ErrorCode::kNumerical,
                  std::string("trajectory LP ended with status ") + to_string(sol.status));
    const double predicted = lin.model_at_ref - (lin.constant + sol.objective);
    if (predicted <= 1e-12 * std::max(1.0, std::abs(res.objective.value))) {
      if (res.duals.empty()) {
        res.duals = sol.duals;
        res.dual_tags = lin.row_tags;
      }
      break;
    }
    TrajectoryPlan trial = res.plan;
    for (int j = 0; j < J; ++j)
      for (int w = 1; w < N; ++w) {
        Vec2& q = trial.waypoint(j, w);
        q.x = std::clamp(q.x + sol.primal[lin.var_x(j, w)], 0.0, scenario.area_x_m);
        q.y = std::clamp(q.y + sol.primal[lin.var_y(j, w)], 0.0, scenario.area_y_m);
      }
    const SpObjective obj = sp_objective(dec, trial, scenario, gu_bits, options.penalty);
    if (obj.value < res.objective.value) {
      const double improvement = res.objective.value - obj.value;
      res.plan = std::move(trial);
      res.objective = obj;
      res.value_trace.push_back(obj.value);
      res.duals = sol.duals;
      res.dual_tags = lin.row_tags;
      ++res.accepted;
      if (improvement <= options.tol) break;
    } else {
      rho *= 0.5;
      if (rho < options.min_trust) {
        res.trust_collapse = res.accepted == 0;
        break;
      }
    }
  }
  return res;
}

}  // namespace drcoto
