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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "drcoto/geometry.h"

namespace drcoto {

struct GroundUser {
  int id = 0;
  Position3D position;              // z == 0
  double cpu_cycles_per_bit = 0.0;  // cycles/bit
  double local_cpu_hz = 0.0;        // cycles/s
  double capacitance = 0.0;         // effective switched capacitance
  double tx_power_w = 0.0;
  double energy_budget_j = 0.0;
};

struct Uav {
  int id = 0;
  Position3D start;
  Position3D end;
  double cpu_hz = 0.0;
  double capacitance = 0.0;
  double tx_power_w = 0.0;
  double energy_budget_j = 0.0;
  double cruise_speed_mps = 0.0;
  int quota = 0;  // GUs computed on board per slot
};

struct Hap {
  Position3D position;
  double cpu_hz = 0.0;
  double capacitance = 0.0;
  double energy_budget_j = 0.0;
  int quota = 0;  // tasks relayed to the HAP per slot, over all UAVs
};

struct ChannelParams {
  double los_a = 0.0;            // dimensionless
  double los_b = 0.0;            // 1/degree
  double beta0 = 0.0;            // linear gain at 1 m
  double pathloss_exp = 0.0;
  double nlos_atten = 0.0;       // (0, 1]
  double bandwidth_gu_hz = 0.0;
  double noise_power_w = 0.0;
  double interference_w = 0.0;
  double bandwidth_uh_hz = 0.0;
  double antenna_gain = 0.0;     // linear
  double total_loss = 0.0;       // linear factor
  double boltzmann = 1.380649e-23;
  double noise_temp_k = 0.0;
  double carrier_freq_hz = 0.0;
  double light_speed_mps = 3e8;
};

// Which induced-power term the rotary-wing model uses. kAsPrinted keeps
// v^4/(4 v0^2) under the radical and the outer square root on the whole
// bracket; kStandard is the textbook v^4/(4 v0^4) form.
enum class InducedPowerForm { kAsPrinted, kStandard };

struct PropulsionParams {
  double blade_power_w = 0.0;        // P1
  double induced_power_w = 0.0;      // P2
  double tip_speed_mps = 0.0;        // U_tip
  double drag_ratio = 0.0;           // d0
  double air_density = 0.0;          // kg/m^3
  double rotor_solidity = 0.0;       // s
  double rotor_area_m2 = 0.0;        // A
  double mean_rotor_velocity = 0.0;  // v0, m/s
  InducedPowerForm induced_form = InducedPowerForm::kAsPrinted;
};

struct TimeGrid {
  int num_slots = 0;
  double slot_len_s = 0.0;
};

// How a value of the task-size sample space maps to bits processed per slot.
enum class TaskSizeMode { kPerSlot, kTotalOverSlots };

struct Scenario {
  double area_x_m = 0.0;
  double area_y_m = 0.0;
  std::vector<GroundUser> gus;
  std::vector<Uav> uavs;
  Hap hap;
  ChannelParams channel;
  PropulsionParams propulsion;
  TimeGrid time;
  double min_separation_m = 0.0;
  TaskSizeMode size_mode = TaskSizeMode::kPerSlot;

  int num_gus() const { return static_cast<int>(gus.size()); }
  int num_uavs() const { return static_cast<int>(uavs.size()); }
  int num_slots() const { return time.num_slots; }
  double uav_altitude() const { return uavs.empty() ? 0.0 : uavs.front().start.z; }
  double per_slot_bits(double sample_bits) const {
    return size_mode == TaskSizeMode::kPerSlot ? sample_bits : sample_bits / time.num_slots;
  }
};

// Binary offloading tensors indexed (gu, uav, slot); slot is 0-based.
class OffloadDecision {
 public:
  OffloadDecision() = default;
  OffloadDecision(int num_gus, int num_uavs, int num_slots);

  int num_gus() const { return gus_; }
  int num_uavs() const { return uavs_; }
  int num_slots() const { return slots_; }
  std::size_t size() const { return x_.size(); }
  std::size_t index(int i, int j, int n) const {
    return (static_cast<std::size_t>(i) * uavs_ + j) * slots_ + n;
  }

  bool x(int i, int j, int n) const { return x_[index(i, j, n)] != 0; }
  bool y(int i, int j, int n) const { return y_[index(i, j, n)] != 0; }
  bool z(int i, int j, int n) const { return z_[index(i, j, n)] != 0; }

  // Sets the (x, y, z) triple of one cell; keeps y + z == x.
  void compute_on_uav(int i, int j, int n);
  void relay_to_hap(int i, int j, int n);
  void set_local(int i, int n);
  void set_raw(int i, int j, int n, bool x, bool y, bool z);

  // UAV j collecting task (i, n), or -1 when computed locally.
  int collector(int i, int n) const;
  bool any_offload() const;

  friend bool operator==(const OffloadDecision&, const OffloadDecision&) = default;

 private:
  int gus_ = 0, uavs_ = 0, slots_ = 0;
  std::vector<std::uint8_t> x_, y_, z_;
};

// Horizontal UAV waypoints at fixed altitude. Waypoint 0 is the start and
// waypoint N the end; slot n is served from waypoint n + 1.
class TrajectoryPlan {
 public:
  TrajectoryPlan() = default;
  TrajectoryPlan(int num_uavs, int num_slots, double altitude);

  int num_uavs() const { return static_cast<int>(points_.size()); }
  int num_slots() const { return slots_; }
  double altitude() const { return altitude_; }

  Vec2& waypoint(int j, int w) { return points_[j][w]; }
  Vec2 waypoint(int j, int w) const { return points_[j][w]; }
  Vec2 serving_point(int j, int slot) const { return points_[j][slot + 1]; }
  Position3D serving_position(int j, int slot) const {
    return at_altitude(serving_point(j, slot), altitude_);
  }

  friend bool operator==(const TrajectoryPlan&, const TrajectoryPlan&) = default;

 private:
  int slots_ = 0;
  double altitude_ = 0.0;
  std::vector<std::vector<Vec2>> points_;
};

TrajectoryPlan straight_line_plan(const Scenario& scenario);

struct Violation {
  std::string code;     // short machine-readable tag, e.g. "separation"
  std::string message;  // human-readable, with indices
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
  std::string summary() const;
};

ValidationResult validate_scenario(const Scenario& scenario);

// Collector, quota and flow-balance rules of a decision.
ValidationResult validate_decision(const OffloadDecision& dec, const Scenario& scenario);

// Area box, per-slot speed, pairwise separation and fixed endpoints, all with
// exact norms. rel_tol is applied relative to each bound.
ValidationResult validate_trajectory(const TrajectoryPlan& plan, const Scenario& scenario,
                                     double rel_tol = 1e-6);

}  // namespace drcoto
