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
#include "drcoto/cost_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "drcoto/error.h"
#include "drcoto/physics.h"

namespace drcoto {

std::vector<double> expected_bits(const std::vector<Distribution>& dists,
                                  const SampleSpace& space, const Scenario& scenario) {
  if (static_cast<int>(dists.size()) != scenario.num_gus())
    throw Error(ErrorCode::kInvalidInput, "one distribution per GU required");
  std::vector<double> bits(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i)
    bits[i] = scenario.per_slot_bits(mean(dists[i], space));
  return bits;
}

std::vector<double> per_cell_bits(const std::vector<double>& gu_bits, const Scenario& scenario) {
  const int N = scenario.num_slots();
  std::vector<double> bits(gu_bits.size() * N);
  for (std::size_t i = 0; i < gu_bits.size(); ++i)
    for (int n = 0; n < N; ++n) bits[i * N + n] = gu_bits[i];
  return bits;
}

ExpectedCosts expected_costs(const OffloadDecision& dec, const TrajectoryPlan& traj,
                             const Scenario& scenario, const std::vector<double>& gu_bits) {
  const int I = scenario.num_gus(), J = scenario.num_uavs(), N = scenario.num_slots();
  ExpectedCosts out;
  out.delay.assign(static_cast<std::size_t>(I) * N, 0.0);
  out.gu_energy.assign(I, 0.0);
  out.uav_energy.assign(J, 0.0);
  for (int i = 0; i < I; ++i)
    for (int n = 0; n < N; ++n) {
      const SlotCost c = slot_cost(i, n, gu_bits[i], dec, traj, scenario);
      out.delay[static_cast<std::size_t>(i) * N + n] = c.delay;
      out.total_delay += c.delay;
      out.gu_energy[i] += c.gu_energy;
      const int j = dec.collector(i, n);
      if (j >= 0) out.uav_energy[j] += c.uav_compute_energy + c.uav_relay_energy;
      out.hap_energy += c.hap_energy;
    }
  for (int j = 0; j < J; ++j)
    for (int w = 1; w <= N; ++w) out.uav_energy[j] += flight_energy(j, w, traj, scenario);
  return out;
}

double worst_budget_violation(const ExpectedCosts& costs, const Scenario& scenario) {
  auto rel = [](double value, double budget) {
    return (value - budget) / std::max(1.0, std::abs(budget));
  };
  double worst = -kInf;
  for (double d : costs.delay) worst = std::max(worst, rel(d, scenario.time.slot_len_s));
  for (std::size_t i = 0; i < costs.gu_energy.size(); ++i)
    worst = std::max(worst, rel(costs.gu_energy[i], scenario.gus[i].energy_budget_j));
  for (std::size_t j = 0; j < costs.uav_energy.size(); ++j)
    worst = std::max(worst, rel(costs.uav_energy[j], scenario.uavs[j].energy_budget_j));
  worst = std::max(worst, rel(costs.hap_energy, scenario.hap.energy_budget_j));
  return worst;
}

WorstCaseInputs worst_case_inputs(const OffloadDecision& dec, const TrajectoryPlan& traj,
                                  const Scenario& scenario, const SampleSpace& space) {
  const int I = scenario.num_gus(), J = scenario.num_uavs(), N = scenario.num_slots();
  const int K = space.size();
  WorstCaseInputs out;
  out.costs.assign(I, std::vector<double>(K, 0.0));
  std::vector<ExpectationRow> delay_rows;
  std::vector<ExpectationRow> gu_rows(I), uav_rows(J);
  ExpectationRow hap_row;
  const std::size_t width = static_cast<std::size_t>(I) * K;
  for (auto& r : gu_rows) r.coef.assign(width, 0.0);
  for (auto& r : uav_rows) r.coef.assign(width, 0.0);
  hap_row.coef.assign(width, 0.0);

  for (int i = 0; i < I; ++i) {
    for (int n = 0; n < N; ++n) {
      ExpectationRow row;
      row.coef.assign(width, 0.0);
      row.rhs = scenario.time.slot_len_s;
      row.tag = "delay gu " + std::to_string(i) + " slot " + std::to_string(n);
      const int j = dec.collector(i, n);
      for (int k = 0; k < K; ++k) {
        const SlotCost c = slot_cost(i, n, scenario.per_slot_bits(space.values[k]), dec, traj,
                                     scenario);
        const std::size_t col = static_cast<std::size_t>(i) * K + k;
        out.costs[i][k] += c.delay;
        row.coef[col] = c.delay;
        gu_rows[i].coef[col] += c.gu_energy;
        if (j >= 0) uav_rows[j].coef[col] += c.uav_compute_energy + c.uav_relay_energy;
        hap_row.coef[col] += c.hap_energy;
      }
      delay_rows.push_back(std::move(row));
    }
  }
  out.side = std::move(delay_rows);
  for (int i = 0; i < I; ++i) {
    gu_rows[i].rhs = scenario.gus[i].energy_budget_j;
    gu_rows[i].tag = "energy gu " + std::to_string(i);
    out.side.push_back(std::move(gu_rows[i]));
  }
  for (int j = 0; j < J; ++j) {
    double flight = 0.0;
    for (int w = 1; w <= N; ++w) flight += flight_energy(j, w, traj, scenario);
    uav_rows[j].rhs = scenario.uavs[j].energy_budget_j - flight;
    uav_rows[j].tag = "energy uav " + std::to_string(j);
    out.side.push_back(std::move(uav_rows[j]));
  }
  hap_row.rhs = scenario.hap.energy_budget_j;
  hap_row.tag = "energy hap";
  out.side.push_back(std::move(hap_row));
  return out;
}

DecisionAudit audit_solution(const OffloadDecision& dec, const TrajectoryPlan& traj,
                             const std::vector<Distribution>& dists, const SampleSpace& space,
                             const Scenario& scenario, double rel_tol) {
  DecisionAudit audit;
  audit.decision = validate_decision(dec, scenario);
  audit.trajectory = validate_trajectory(traj, scenario, rel_tol);
  if (!audit.decision.ok() || !audit.trajectory.ok()) {
    audit.budget_violation = kInf;
    return audit;
  }
  const ExpectedCosts costs = expected_costs(dec, traj, scenario, expected_bits(dists, space, scenario));
  audit.budget_violation = worst_budget_violation(costs, scenario);
  return audit;
}

}  // namespace drcoto
