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

#include "drcoto/milp.h"
#include "drcoto/scenario.h"
#include "drcoto/subproblem.h"

namespace drcoto {

// Trajectory-free lower bounds on every decision-dependent cost. Link rates
// are bounded by the best rate reachable from each UAV's fixed endpoints
// within the horizon, so every term is a valid underestimate whatever the
// trajectory.
struct OptimisticModel {
  int num_gus = 0, num_uavs = 0, num_slots = 0;
  std::vector<double> local_delay;    // [i * N + n]
  std::vector<double> local_energy;   // [i * N + n]
  std::vector<double> y_delay;        // [(i * J + j) * N + n]
  std::vector<double> z_delay;
  std::vector<double> upload_energy;  // GU side, x = 1
  std::vector<double> uav_compute_energy;
  std::vector<double> uav_relay_energy;
  std::vector<double> hap_energy;
  std::vector<double> min_flight_energy;  // [j]

  std::size_t cell(int i, int n) const { return static_cast<std::size_t>(i) * num_slots + n; }
  std::size_t option(int i, int j, int n) const {
    return (static_cast<std::size_t>(i) * num_uavs + j) * num_slots + n;
  }
  double delay_bound(const OffloadDecision& dec) const;
};

OptimisticModel optimistic_model(const Scenario& scenario, const std::vector<double>& gu_bits);

// xi >= constant + coeff . (x, y, z)
struct BendersCut {
  double constant = 0.0;
  std::vector<double> coeff_x, coeff_y, coeff_z;  // OffloadDecision layout
  double evaluate(const OffloadDecision& dec) const;
};

// Optimality cut from a subproblem solved at dec_ref. The Lagrangian of the
// linearized subproblem at a fixed trajectory overestimates the subproblem
// value away from dec_ref, so the cut combines the trajectory-free bound with
// a proximity term that reaches sp_value exactly at dec_ref:
//   xi >= bound(x) + (sp_value - bound(dec_ref)) * (1 - changed_cells(x, dec_ref)).
BendersCut build_benders_cut(double sp_value, const OffloadDecision& dec_ref,
                             const OptimisticModel& model);

// The trajectory-free bound itself, always valid.
BendersCut base_cut(const OptimisticModel& model);

struct MasterResult {
  OffloadDecision dec;
  double value = 0.0;
  double bound = 0.0;
  int nodes = 0;
  bool node_limit = false;
  bool feasible = false;
};

// Master problem over (y, z) with x = y + z: collector, quota and optimistic
// budget rows plus the accumulated cuts. A feasible incumbent seeds the search.
MasterResult solve_master(const std::vector<BendersCut>& cuts, const OptimisticModel& model,
                          const Scenario& scenario, const MilpOptions& options,
                          const OffloadDecision* incumbent = nullptr);

}  // namespace drcoto
