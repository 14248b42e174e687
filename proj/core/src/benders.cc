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
#include "drcoto/benders.h"

#include <algorithm>
#include <cmath>

#include "drcoto/error.h"
#include "drcoto/physics.h"

namespace drcoto {

namespace {

// Lower bound on the horizontal distance between a point and waypoint w of
// UAV j over every trajectory that respects the speed limit.
double reachable_distance(Vec2 p, const Uav& uav, int w, const Scenario& s) {
  const double step = uav.cruise_speed_mps * s.time.slot_len_s;
  const double from_start = norm(p - uav.start.horizontal()) - w * step;
  const double from_end = norm(p - uav.end.horizontal()) - (s.num_slots() - w) * step;
  return std::max({0.0, from_start, from_end});
}

}  // namespace

double OptimisticModel::delay_bound(const OffloadDecision& dec) const {
  double total = 0.0;
  for (int i = 0; i < num_gus; ++i)
    for (int n = 0; n < num_slots; ++n) {
      const int j = dec.collector(i, n);
      if (j < 0) total += local_delay[cell(i, n)];
      else total += dec.y(i, j, n) ? y_delay[option(i, j, n)] : z_delay[option(i, j, n)];
    }
  return total;
}

OptimisticModel optimistic_model(const Scenario& s, const std::vector<double>& gu_bits) {
  const int I = s.num_gus(), J = s.num_uavs(), N = s.num_slots();
  OptimisticModel m;
  m.num_gus = I;
  m.num_uavs = J;
  m.num_slots = N;
  const std::size_t cells = static_cast<std::size_t>(I) * N;
  const std::size_t options = cells * J;
  m.local_delay.assign(cells, 0.0);
  m.local_energy.assign(cells, 0.0);
  for (auto* v : {&m.y_delay, &m.z_delay, &m.upload_energy, &m.uav_compute_energy,
                  &m.uav_relay_energy, &m.hap_energy})
    v->assign(options, 0.0);
  m.min_flight_energy.assign(J, 0.0);

  const Hap& hap = s.hap;
  const double alt = s.uav_altitude();
  for (int i = 0; i < I; ++i) {
    const GroundUser& gu = s.gus[i];
    const double bits = gu_bits[i];
    const double cycles = bits * gu.cpu_cycles_per_bit;
    for (int n = 0; n < N; ++n) {
      m.local_delay[m.cell(i, n)] = cycles / gu.local_cpu_hz;
      m.local_energy[m.cell(i, n)] = gu.capacitance * cycles * gu.local_cpu_hz * gu.local_cpu_hz;
      for (int j = 0; j < J; ++j) {
        const Uav& uav = s.uavs[j];
        const int w = n + 1;
        const Vec2 g = gu.position.horizontal();
        const double dg = reachable_distance(g, uav, w, s);
        const Position3D near_gu{g.x + dg, g.y, alt};
        const double inv_ug = 1.0 / rate_gu_uav(gu_uav_gain(gu.position, near_gu, s.channel),
                                                s.channel, gu.tx_power_w);
        const Vec2 h = hap.position.horizontal();
        const double dh = reachable_distance(h, uav, w, s);
        const Position3D near_hap{h.x + dh, h.y, alt};
        const double inv_uh = 1.0 / rate_uav_hap(near_hap, hap.position, s.channel, uav.tx_power_w);
        const std::size_t o = m.option(i, j, n);
        m.y_delay[o] = bits * inv_ug + cycles / uav.cpu_hz;
        m.z_delay[o] = bits * inv_ug + bits * inv_uh + cycles / hap.cpu_hz;
        m.upload_energy[o] = gu.tx_power_w * bits * inv_ug;
        m.uav_compute_energy[o] = uav.capacitance * cycles * uav.cpu_hz * uav.cpu_hz;
        m.uav_relay_energy[o] = uav.tx_power_w * bits * inv_uh;
        m.hap_energy[o] = hap.capacitance * cycles * hap.cpu_hz * hap.cpu_hz;
      }
    }
  }
  const double tau = s.time.slot_len_s;
  for (int j = 0; j < J; ++j) {
    const Uav& uav = s.uavs[j];
    const double p_hov = hover_power(s.propulsion);
    const double slope = propulsion_power(uav.cruise_speed_mps, s.propulsion) - p_hov;
    const double t_min = norm(uav.end.horizontal() - uav.start.horizontal()) / uav.cruise_speed_mps;
    const double t_fly = slope >= 0.0 ? t_min : N * tau;
    m.min_flight_energy[j] = N * tau * p_hov + slope * t_fly;
  }
  return m;
}

double BendersCut::evaluate(const OffloadDecision& dec) const {
  double v = constant;
  for (int i = 0; i < dec.num_gus(); ++i)
    for (int j = 0; j < dec.num_uavs(); ++j)
      for (int n = 0; n < dec.num_slots(); ++n) {
        const std::size_t k = dec.index(i, j, n);
        if (dec.x(i, j, n)) v += coeff_x[k];
        if (dec.y(i, j, n)) v += coeff_y[k];
        if (dec.z(i, j, n)) v += coeff_z[k];
      }
  return v;
}

BendersCut base_cut(const OptimisticModel& m) {
  BendersCut cut;
  const std::size_t options = m.y_delay.size();
  cut.coeff_x.assign(options, 0.0);
  cut.coeff_y = m.y_delay;
  cut.coeff_z = m.z_delay;
  for (int i = 0; i < m.num_gus; ++i)
    for (int n = 0; n < m.num_slots; ++n) {
      const double local = m.local_delay[m.cell(i, n)];
      cut.constant += local;
      for (int j = 0; j < m.num_uavs; ++j) cut.coeff_x[m.option(i, j, n)] = -local;
    }
  return cut;
}

BendersCut build_benders_cut(double sp_value, const OffloadDecision& ref,
                             const OptimisticModel& m) {
  BendersCut cut = base_cut(m);
  const double gap = std::max(0.0, sp_value - m.delay_bound(ref));
  // 1 - sum over cells of [cell differs from ref].
  cut.constant += gap;
  for (int i = 0; i < m.num_gus; ++i)
    for (int n = 0; n < m.num_slots; ++n) {
      const int j0 = ref.collector(i, n);
      if (j0 < 0) {
        for (int j = 0; j < m.num_uavs; ++j) cut.coeff_x[m.option(i, j, n)] -= gap;
        continue;
      }
      cut.constant -= gap;
      if (ref.y(i, j0, n)) cut.coeff_y[m.option(i, j0, n)] += gap;
      else cut.coeff_z[m.option(i, j0, n)] += gap;
    }
  return cut;
}

MasterResult solve_master(const std::vector<BendersCut>& cuts, const OptimisticModel& m,
                          const Scenario& s, const MilpOptions& options,
                          const OffloadDecision* incumbent) {
  const int I = m.num_gus, J = m.num_uavs, N = m.num_slots;
  const double tau = s.time.slot_len_s;
  const double tol = 1e-9 * std::max(1.0, tau);
  const std::size_t options_count = m.y_delay.size();
  std::vector<int> yvar(options_count, -1), zvar(options_count, -1);

  MilpProblem mp;
  LpProblem& lp = mp.base;
  for (int i = 0; i < I; ++i)
    for (int j = 0; j < J; ++j)
      for (int n = 0; n < N; ++n) {
        const std::size_t o = m.option(i, j, n);
        if (s.uavs[j].quota > 0 && m.y_delay[o] <= tau + tol) {
          yvar[o] = lp.add_variable(0.0, 0.0, 1.0);
        }
        if (s.hap.quota > 0 && m.z_delay[o] <= tau + tol) {
          zvar[o] = lp.add_variable(0.0, 0.0, 1.0);
        }
      }
  const int xi = lp.add_variable(1.0, -kInf, kInf);
  const int nv = lp.num_vars();
  mp.binary.assign(nv, true);
  mp.binary[xi] = false;

  MasterResult out;
  out.dec = OffloadDecision(I, J, N);
  auto row = [&]() { return std::vector<double>(nv, 0.0); };

  for (int i = 0; i < I; ++i)
    for (int n = 0; n < N; ++n) {
      std::vector<double> r = row();
      int count = 0;
      for (int j = 0; j < J; ++j) {
        const std::size_t o = m.option(i, j, n);
        if (yvar[o] >= 0) r[yvar[o]] = 1.0, ++count;
        if (zvar[o] >= 0) r[zvar[o]] = 1.0, ++count;
      }
      const bool must_offload = m.local_delay[m.cell(i, n)] > tau + tol;
      if (must_offload && count == 0) return out;  // no option meets the delay bound
      if (count <= 1 && !must_offload) continue;
      lp.add_row(std::move(r), must_offload ? Relation::kEqual : Relation::kLessEqual, 1.0);
    }
  for (int j = 0; j < J; ++j)
    for (int n = 0; n < N; ++n) {
      std::vector<double> r = row();
      int count = 0;
      for (int i = 0; i < I; ++i)
        if (const int v = yvar[m.option(i, j, n)]; v >= 0) r[v] = 1.0, ++count;
      if (count > s.uavs[j].quota) lp.add_row(std::move(r), Relation::kLessEqual, s.uavs[j].quota);
    }
  for (int n = 0; n < N; ++n) {
    std::vector<double> r = row();
    int count = 0;
    for (int i = 0; i < I; ++i)
      for (int j = 0; j < J; ++j)
        if (const int v = zvar[m.option(i, j, n)]; v >= 0) r[v] = 1.0, ++count;
    if (count > s.hap.quota) lp.add_row(std::move(r), Relation::kLessEqual, s.hap.quota);
  }

  // Optimistic energy budgets, kept only when some assignment could break them.
  for (int i = 0; i < I; ++i) {
    std::vector<double> r = row();
    double base = 0.0, worst = 0.0;
    for (int n = 0; n < N; ++n) {
      const double local = m.local_energy[m.cell(i, n)];
      base += local;
      double cell_worst = local;
      for (int j = 0; j < J; ++j) {
        const std::size_t o = m.option(i, j, n);
        for (int v : {yvar[o], zvar[o]})
          if (v >= 0) {
            r[v] = m.upload_energy[o] - local;
            cell_worst = std::max(cell_worst, m.upload_energy[o]);
          }
      }
      worst += cell_worst;
    }
    if (worst > s.gus[i].energy_budget_j)
      lp.add_row(std::move(r), Relation::kLessEqual, s.gus[i].energy_budget_j - base);
  }
  for (int j = 0; j < J; ++j) {
    std::vector<double> r = row();
    double worst = m.min_flight_energy[j];
    for (int i = 0; i < I; ++i)
      for (int n = 0; n < N; ++n) {
        const std::size_t o = m.option(i, j, n);
        double cell_worst = 0.0;
        if (yvar[o] >= 0) {
          r[yvar[o]] = m.uav_compute_energy[o];
          cell_worst = m.uav_compute_energy[o];
        }
        if (zvar[o] >= 0) {
          r[zvar[o]] = m.uav_relay_energy[o];
          cell_worst = std::max(cell_worst, m.uav_relay_energy[o]);
        }
        worst += cell_worst;
      }
    if (worst > s.uavs[j].energy_budget_j)
      lp.add_row(std::move(r), Relation::kLessEqual,
                 s.uavs[j].energy_budget_j - m.min_flight_energy[j]);
  }
  {
    std::vector<double> r = row();
    double worst = 0.0;
    for (std::size_t o = 0; o < options_count; ++o)
      if (zvar[o] >= 0) {
        r[zvar[o]] = m.hap_energy[o];
        worst += m.hap_energy[o];
      }
    if (worst > s.hap.energy_budget_j)
      lp.add_row(std::move(r), Relation::kLessEqual, s.hap.energy_budget_j);
  }

  for (const BendersCut& cut : cuts) {
    std::vector<double> r = row();
    for (std::size_t o = 0; o < options_count; ++o) {
      if (yvar[o] >= 0) r[yvar[o]] = -(cut.coeff_x[o] + cut.coeff_y[o]);
      if (zvar[o] >= 0) r[zvar[o]] = -(cut.coeff_x[o] + cut.coeff_z[o]);
    }
    r[xi] = 1.0;
    lp.add_row(std::move(r), Relation::kGreaterEqual, cut.constant);
  }

  MilpOptions opts = options;
  if (incumbent) {
    std::vector<double> start(nv, 0.0);
    bool representable = true;
    for (int i = 0; i < I && representable; ++i)
      for (int n = 0; n < N; ++n) {
        const int j = incumbent->collector(i, n);
        if (j < 0) continue;
        const std::size_t o = m.option(i, j, n);
        const int v = incumbent->y(i, j, n) ? yvar[o] : zvar[o];
        if (v < 0) {
          representable = false;
          break;
        }
        start[v] = 1.0;
      }
    if (representable) {
      double value = -kInf;
      for (const BendersCut& cut : cuts) value = std::max(value, cut.evaluate(*incumbent));
      start[xi] = value;
      opts.start = std::move(start);
    }
  }

  const MilpSolution sol = solve_milp(mp, opts);
  out.nodes = sol.nodes_explored;
  out.node_limit = sol.node_limit_reached;
  out.bound = sol.bound;
  if (sol.assignment.empty()) return out;
  out.feasible = true;
  out.value = sol.objective;
  for (int i = 0; i < I; ++i)
    for (int j = 0; j < J; ++j)
      for (int n = 0; n < N; ++n) {
        const std::size_t o = m.option(i, j, n);
        if (yvar[o] >= 0 && sol.assignment[yvar[o]] > 0.5) out.dec.compute_on_uav(i, j, n);
        else if (zvar[o] >= 0 && sol.assignment[zvar[o]] > 0.5) out.dec.relay_to_hap(i, j, n);
      }
  return out;
}

}  // namespace drcoto
