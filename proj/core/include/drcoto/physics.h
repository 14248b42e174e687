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

#include "drcoto/geometry.h"
#include "drcoto/scenario.h"

namespace drcoto {

// Probability of a line-of-sight link at elevation theta (degrees).
// Throws Error(kDomain) outside [0, 90].
double los_probability(double theta_deg, double a, double b);

// Elevation of the UAV seen from the GU, in degrees.
double elevation_deg(const Position3D& gu, const Position3D& uav);

double gu_uav_gain(const Position3D& gu, const Position3D& uav, const ChannelParams& ch);
double rate_gu_uav(double gain, const ChannelParams& ch, double p_tx);

// Free-space loss (c / (4 pi d f_c))^2.
double free_space_loss(double distance_m, const ChannelParams& ch);
double rate_uav_hap(const Position3D& uav, const Position3D& hap, const ChannelParams& ch,
                    double p_tx);

// Reciprocal rate 1/R (s/bit) and its gradient with respect to the UAV's
// horizontal position.
struct InverseRate {
  double value = 0.0;
  Vec2 grad;
};
InverseRate inverse_rate_gu_uav(const Position3D& gu, const Position3D& uav,
                                const ChannelParams& ch, double p_tx);
InverseRate inverse_rate_uav_hap(const Position3D& uav, const Position3D& hap,
                                 const ChannelParams& ch, double p_tx);

struct SlotCost {
  double delay = 0.0;
  double gu_energy = 0.0;
  double uav_compute_energy = 0.0;
  double uav_relay_energy = 0.0;
  double hap_energy = 0.0;
};

// Cost of GU i's slot-n task part of the given size (bits). Throws
// Error(kZeroRate) when an active link has zero rate.
SlotCost slot_cost(int i, int n, double bits, const OffloadDecision& dec,
                   const TrajectoryPlan& traj, const Scenario& scenario);

double propulsion_power(double v, const PropulsionParams& pp);
double hover_power(const PropulsionParams& pp);

// Flight energy of UAV j over the segment ending at waypoint w (1..N).
// Throws Error(kSpeedViolation) when the segment cannot be flown in one slot.
double flight_energy(int j, int w, const TrajectoryPlan& traj, const Scenario& scenario);

// Relay, compute and flight energy of UAV j. bits[i * N + n] is the size of
// task part (i, n).
double total_uav_energy(int j, const OffloadDecision& dec, const TrajectoryPlan& traj,
                        const Scenario& scenario, const std::vector<double>& bits);

}  // namespace drcoto
