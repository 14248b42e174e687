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
#include "drcoto/drcoto.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "drcoto/cost_model.h"
#include "drcoto/error.h"
#include "drcoto/physics.h"

namespace drcoto {

SolveOptions::SolveOptions() { master.node_limit = 100; }

ScaOptions SolveOptions::sca() const {
  ScaOptions o;
  o.tol = tol.sca;
  o.max_iters = tol.sca_max;
  o.penalty = penalty;
  o.lp = lp;
  return o;
}

InitialPoint initial_feasible(const Scenario& s, const AmbiguitySet& amb) {
  const int I = s.num_gus(), J = s.num_uavs(), N = s.num_slots();
  InitialPoint init;
  init.dec = OffloadDecision(I, J, N);
  init.plan = straight_line_plan(s);
  init.dists = amb.references;
  const std::vector<double> bits = expected_bits(amb.references, amb.space, s);
  const double tau = s.time.slot_len_s;

  std::vector<int> uav_load(static_cast<std::size_t>(J) * N, 0), hap_load(N, 0);
  auto cell_delay = [&](int i, int n) {
    return slot_cost(i, n, bits[i], init.dec, init.plan, s).delay;
  };
  // Offloads (i, n) to the nearest UAV able to meet the delay bound.
  auto offload = [&](int i, int n) {
    std::vector<int> order(J);
    std::iota(order.begin(), order.end(), 0);
    const Vec2 g = s.gus[i].position.horizontal();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return norm(init.plan.serving_point(a, n) - g) < norm(init.plan.serving_point(b, n) - g);
    });
    for (int j : order) {
      if (uav_load[j * N + n] < s.uavs[j].quota) {
        init.dec.compute_on_uav(i, j, n);
        if (cell_delay(i, n) <= tau) {
          ++uav_load[j * N + n];
          return true;
        }
      }
      if (hap_load[n] < s.hap.quota) {
        init.dec.relay_to_hap(i, j, n);
        if (cell_delay(i, n) <= tau) {
          ++hap_load[n];
          return true;
        }
      }
      init.dec.set_local(i, n);
    }
    return false;
  };

  struct Cell {
    int i, n;
    double delay;
  };
  std::vector<Cell> late;
  for (int i = 0; i < I; ++i)
    for (int n = 0; n < N; ++n)
      if (const double d = cell_delay(i, n); d > tau) late.push_back({i, n, d});
  std::stable_sort(late.begin(), late.end(),
                   [](const Cell& a, const Cell& b) { return a.delay > b.delay; });
  for (const Cell& c : late)
    if (!offload(c.i, c.n))
      throw Error(ErrorCode::kNoFeasibleStart, "no UAV can take task of GU " +
                                                   std::to_string(c.i) + " in slot " +
                                                   std::to_string(c.n));

  for (int i = 0; i < I; ++i) {
    auto energy = [&] {
      double e = 0.0;
      for (int n = 0; n < N; ++n) e += slot_cost(i, n, bits[i], init.dec, init.plan, s).gu_energy;
      return e;
    };
    for (int n = 0; n < N && energy() > s.gus[i].energy_budget_j; ++n) {
      if (init.dec.collector(i, n) >= 0) continue;
      const double before = slot_cost(i, n, bits[i], init.dec, init.plan, s).gu_energy;
      if (!offload(i, n)) continue;
      if (slot_cost(i, n, bits[i], init.dec, init.plan, s).gu_energy >= before) {
        const int j = init.dec.collector(i, n);
        if (init.dec.y(i, j, n)) --uav_load[j * N + n];
        else --hap_load[n];
        init.dec.set_local(i, n);
      }
    }
    if (energy() > s.gus[i].energy_budget_j)
      throw Error(ErrorCode::kNoFeasibleStart,
                  "GU " + std::to_string(i) + " energy budget cannot be met");
  }
  return init;
}

P2Result solve_p2(const std::vector<Distribution>& dists, const AmbiguitySet& amb,
                  const Scenario& s, const SolveOptions& options, P2Warm warm) {
  const std::vector<double> bits = expected_bits(dists, amb.space, s);
  const OptimisticModel model = optimistic_model(s, bits);
  const ScaOptions sca = options.sca();
  const TrajectoryPlan line = straight_line_plan(s);

  P2Result out;
  OffloadDecision x = warm.dec ? *warm.dec : initial_feasible(s, amb).dec;
  std::vector<BendersCut> cuts{base_cut(model)};
  std::vector<OffloadDecision> visited;
  double ub = kInf, lb = -kInf;
  bool incumbent_feasible = false;

  for (int omega = 1; omega <= options.tol.benders_max; ++omega) {
    const TrajectoryPlan& start = (warm.plan && omega == 1) ? *warm.plan : line;
    const SpResult sp = solve_sp(x, bits, start, s, sca);
    out.sca_iters += sp.lp_solves;
    visited.push_back(x);
    if (sp.objective.value < ub) {
      ub = sp.objective.value;
      out.dec = x;
      out.plan = sp.plan;
      incumbent_feasible = sp.objective.feasible;
    }
    cuts.push_back(build_benders_cut(sp.objective.value, x, model));

    const MasterResult mp = solve_master(cuts, model, s, options.master, &out.dec);
    if (mp.feasible || mp.node_limit) lb = std::max(lb, std::min(mp.bound, ub));
    BendersStep step;
    step.omega = omega;
    step.ub = ub;
    step.lb = lb;
    step.cuts = static_cast<int>(cuts.size()) - 1;
    step.sca_iters = sp.lp_solves;
    step.master_nodes = mp.nodes;
    out.steps.push_back(step);

    if (ub - lb <= options.tol.benders) {
      out.converged = true;
      break;
    }
    if (!mp.feasible) break;
    if (std::find(visited.begin(), visited.end(), mp.dec) != visited.end()) {
      out.converged = !mp.node_limit;
      break;
    }
    x = mp.dec;
  }
  out.value = ub;
  out.feasible = incumbent_feasible;
  return out;
}

SolveReport drcoto_solve(const Scenario& s, const AmbiguitySet& amb, const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.method = "DRCOTO";
  std::vector<Distribution> dists = amb.references;
  double prev = kInf;
  P2Result incumbent;
  bool have_incumbent = false;
  bool outer_converged = false;

  for (int r = 1; r <= options.tol.outer_max; ++r) {
    P2Warm warm;
    if (options.warm_start && have_incumbent) warm = {&incumbent.dec, &incumbent.plan};
    P2Result p2 = solve_p2(dists, amb, s, options, warm);
    for (BendersStep st : p2.steps) {
      st.outer = r;
      rep.steps.push_back(st);
    }
    rep.benders_iters += static_cast<int>(p2.steps.size());
    rep.sca_iters += p2.sca_iters;
    // P2 at the previous worst case may not beat the previous incumbent, since
    // the subproblem is solved locally; keep the better one.
    if (!have_incumbent || p2.value <= prev) {
      incumbent = std::move(p2);
      have_incumbent = true;
    }
    const WorstCaseInputs in = worst_case_inputs(incumbent.dec, incumbent.plan, s, amb.space);
    const WorstCase wc = worst_case_distribution(in.costs, amb, in.side, options.lp);
    rep.outer_trace.push_back(wc.objective);
    rep.outer_iters = r;
    const bool same = wc.dists == dists;
    const bool stalled = std::abs(wc.objective - prev) <= options.tol.outer;
    dists = wc.dists;
    prev = wc.objective;
    if (same || stalled) {
      outer_converged = true;
      break;
    }
  }

  rep.objective = prev;
  rep.decisions = incumbent.dec;
  rep.trajectories = incumbent.plan;
  rep.worst_dists = dists;
  for (const BendersStep& st : incumbent.steps) {
    rep.ub_trace.push_back(st.ub);
    rep.lb_trace.push_back(st.lb);
  }
  rep.feasible = incumbent.feasible;
  rep.converged = outer_converged && incumbent.converged;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace drcoto
