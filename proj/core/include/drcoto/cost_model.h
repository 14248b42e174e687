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
#pragma once

#include <vector>

#include "drcoto/scenario.h"
#include "drcoto/uncertainty.h"

namespace drcoto {

// Every delay and energy term is linear in the task size, so expectations
// under a distribution equal the costs at the expected per-slot size.
std::vector<double> expected_bits(const std::vector<Distribution>& dists,
                                  const SampleSpace& space, const Scenario& scenario);

// bits[i * N + n] with the same size for every slot of GU i.
std::vector<double> per_cell_bits(const std::vector<double>& gu_bits, const Scenario& scenario);

struct ExpectedCosts {
  std::vector<double> delay;       // [i * N + n]
  std::vector<double> gu_energy;   // [i], summed over slots
  std::vector<double> uav_energy;  // [j], relay + compute + flight
  double hap_energy = 0.0;
  double total_delay = 0.0;
};

ExpectedCosts expected_costs(const OffloadDecision& dec, const TrajectoryPlan& traj,
                             const Scenario& scenario, const std::vector<double>& gu_bits);

// Largest violation of the delay and energy budgets, each relative to
// max(1, |budget|). Nonpositive when all hold.
double worst_budget_violation(const ExpectedCosts& costs, const Scenario& scenario);

// Coefficients of the worst-case problem at fixed decisions and trajectory:
// costs[i][k] = sum_n T_{i,n,k} and the delay and energy budgets as
// expectation rows over p_{i,k}.
struct WorstCaseInputs {
  std::vector<std::vector<double>> costs;
  std::vector<ExpectationRow> side;
};
WorstCaseInputs worst_case_inputs(const OffloadDecision& dec, const TrajectoryPlan& traj,
                                  const Scenario& scenario, const SampleSpace& space);

struct DecisionAudit {
  ValidationResult decision;
  ValidationResult trajectory;
  double budget_violation = 0.0;
  bool ok(double rel_tol = 1e-6) const {
    return decision.ok() && trajectory.ok() && budget_violation <= rel_tol;
  }
};

// Exact re-validation of a solution, expectations under the given
// distributions.
DecisionAudit audit_solution(const OffloadDecision& dec, const TrajectoryPlan& traj,
                             const std::vector<Distribution>& dists, const SampleSpace& space,
                             const Scenario& scenario, double rel_tol = 1e-6);

}  // namespace drcoto
