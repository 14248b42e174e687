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

#include "drcoto/benders.h"
#include "drcoto/scenario.h"
#include "drcoto/subproblem.h"
#include "drcoto/uncertainty.h"

namespace drcoto {

struct Tolerances {
  double sca = 1e-3;      // seconds
  double benders = 1e-2;  // UB - LB, seconds
  double outer = 1e-3;    // seconds
  int sca_max = 30;
  int benders_max = 40;
  int outer_max = 20;
};

struct SolveOptions {
  Tolerances tol;
  double penalty = 1e4;
  bool warm_start = false;  // seed later outer iterations with the incumbent
  MilpOptions master;
  LpOptions lp;

  ScaOptions sca() const;
  SolveOptions();
};

struct InitialPoint {
  OffloadDecision dec;
  TrajectoryPlan plan;
  std::vector<Distribution> dists;
};

// All-local decisions when they meet the delay and GU energy budgets under
// the references; otherwise the worst parts are offloaded greedily to the
// nearest UAV with spare quota. Throws Error(kNoFeasibleStart).
InitialPoint initial_feasible(const Scenario& scenario, const AmbiguitySet& amb);

struct BendersStep {
  int outer = 0;
  int omega = 0;
  double ub = kInf;
  double lb = -kInf;
  int cuts = 0;
  int sca_iters = 0;
  int master_nodes = 0;
};

struct P2Result {
  OffloadDecision dec;
  TrajectoryPlan plan;
  double value = kInf;  // expected total delay of the incumbent
  bool feasible = false;
  bool converged = false;
  std::vector<BendersStep> steps;
  int sca_iters = 0;
};

struct P2Warm {
  const OffloadDecision* dec = nullptr;
  const TrajectoryPlan* plan = nullptr;
};

P2Result solve_p2(const std::vector<Distribution>& dists, const AmbiguitySet& amb,
                  const Scenario& scenario, const SolveOptions& options, P2Warm warm = {});

struct SolveReport {
  std::string method;
  double objective = 0.0;  // worst-case (or fixed-distribution) expected total delay
  OffloadDecision decisions;
  TrajectoryPlan trajectories;
  std::vector<Distribution> worst_dists;
  std::vector<double> ub_trace, lb_trace;  // final Benders run
  std::vector<BendersStep> steps;          // every Benders iteration of every outer step
  std::vector<double> outer_trace;         // D3 per outer iteration
  int outer_iters = 0;
  int benders_iters = 0;
  int sca_iters = 0;
  bool converged = false;
  bool feasible = false;
  double wall_time = 0.0;
};

SolveReport drcoto_solve(const Scenario& scenario, const AmbiguitySet& amb,
                         const SolveOptions& options = {});

}  // namespace drcoto
