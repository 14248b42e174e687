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

#include <string>
#include <vector>

#include "drcoto/lp.h"
#include "drcoto/scenario.h"

namespace drcoto {

struct ScaOptions {
  double tol = 1e-3;        // stop once an accepted step improves by at most this
  int max_iters = 30;       // LP solves per call
  double penalty = 1e4;     // per unit of budget slack
  double min_trust = 1e-4;  // meters
  double speed_margin = 1e-9;
  LpOptions lp;
};

// Exact objective of the trajectory subproblem: expected total delay plus the
// penalty on violated delay and energy budgets.
struct SpObjective {
  double delay = 0.0;
  double slack = 0.0;  // sum of budget violations in their own units
  double value = 0.0;  // delay + penalty * slack
  bool feasible = false;
};
SpObjective sp_objective(const OffloadDecision& dec, const TrajectoryPlan& traj,
                         const Scenario& scenario, const std::vector<double>& gu_bits,
                         double penalty);

// Linearized subproblem around traj_ref. LP variables are displacements of
// the free waypoints 1..N-1 followed by one slack per kept budget row.
struct SpLinearization {
  LpProblem lp;
  double constant = 0.0;  // model value = constant + lp objective
  double model_at_ref = 0.0;
  int num_uavs = 0, num_slots = 0;
  std::vector<std::string> row_tags;
  std::vector<double> gradient;  // objective gradient, layout of displacement vars

  int num_free() const { return num_slots - 1; }
  int var_x(int j, int w) const { return 2 * (j * num_free() + (w - 1)); }
  int var_y(int j, int w) const { return var_x(j, w) + 1; }
};
SpLinearization linearize_sp(const TrajectoryPlan& traj_ref, const OffloadDecision& dec,
                             const Scenario& scenario, const std::vector<double>& gu_bits,
                             double trust_radius, const ScaOptions& options = {});

// Gradient of the expected total delay with respect to all waypoints, layout
// [(j, w) -> 2 * (j * (N + 1) + w)].
std::vector<double> delay_gradient(const OffloadDecision& dec, const TrajectoryPlan& traj,
                                   const Scenario& scenario, const std::vector<double>& gu_bits);

struct SpResult {
  TrajectoryPlan plan;
  SpObjective objective;
  int lp_solves = 0;
  int accepted = 0;
  bool trust_collapse = false;
  std::vector<double> value_trace;  // exact objective after each accepted step
  std::vector<double> duals;        // of the last accepted LP
  std::vector<std::string> dual_tags;
};

SpResult solve_sp(const OffloadDecision& dec, const std::vector<double>& gu_bits,
                  const TrajectoryPlan& traj_init, const Scenario& scenario,
                  const ScaOptions& options = {});

}  // namespace drcoto
