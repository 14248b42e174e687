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
#include "drcoto/physics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "drcoto/error.h"
#include "drcoto/units.h"

namespace drcoto {

using units::kPi;
using units::rad_to_deg;

double los_probability(double theta_deg, double a, double b) {
  if (!(theta_deg >= 0.0 && theta_deg <= 90.0))
    throw Error(ErrorCode::kDomain, "elevation " + std::to_string(theta_deg) + " outside [0, 90]");
  return 1.0 / (1.0 + a * std::exp(-b * (theta_deg - a)));
}

double elevation_deg(const Position3D& gu, const Position3D& uav) {
  const double h = uav.z - gu.z;
  const double rho = norm(uav.horizontal() - gu.horizontal());
  return std::clamp(rad_to_deg(std::atan2(h, rho)), 0.0, 90.0);
}

double gu_uav_gain(const Position3D& gu, const Position3D& uav, const ChannelParams& ch) {
  if (!(uav.z > 0.0)) throw Error(ErrorCode::kDomain, "UAV altitude must be > 0");
  const double d = distance(gu, uav);
  const double p = los_probability(elevation_deg(gu, uav), ch.los_a, ch.los_b);
  return (p + (1.0 - p) * ch.nlos_atten) * ch.beta0 * std::pow(d, -ch.pathloss_exp);
}

double rate_gu_uav(double gain, const ChannelParams& ch, double p_tx) {
  if (gain < 0.0) throw Error(ErrorCode::kDomain, "negative channel gain");
  return ch.bandwidth_gu_hz * std::log2(1.0 + p_tx * gain / (ch.noise_power_w + ch.interference_w));
}

double free_space_loss(double distance_m, const ChannelParams& ch) {
  const double r = ch.light_speed_mps / (4.0 * kPi * distance_m * ch.carrier_freq_hz);
  return r * r;
}

namespace {

double uh_snr_scale(const ChannelParams& ch, double p_tx) {
  return p_tx * ch.antenna_gain * ch.total_loss /
         (ch.bandwidth_uh_hz * ch.boltzmann * ch.noise_temp_k);
}

}  // namespace

double rate_uav_hap(const Position3D& uav, const Position3D& hap, const ChannelParams& ch,
                    double p_tx) {
  const double d = distance(uav, hap);
  if (!(d > 0.0)) throw Error(ErrorCode::kDomain, "UAV and HAP positions coincide");
  return ch.bandwidth_uh_hz * std::log2(1.0 + uh_snr_scale(ch, p_tx) * free_space_loss(d, ch));
}

InverseRate inverse_rate_gu_uav(const Position3D& gu, const Position3D& uav,
                                const ChannelParams& ch, double p_tx) {
  const Vec2 r = uav.horizontal() - gu.horizontal();
  const double rho = norm(r);
  const double h = uav.z - gu.z;
  const double d2 = rho * rho + h * h;
  const double d = std::sqrt(d2);
  const double theta = elevation_deg(gu, uav);
  const double p = los_probability(theta, ch.los_a, ch.los_b);
  const double mix = p + (1.0 - p) * ch.nlos_atten;
  const double path = ch.beta0 * std::pow(d, -ch.pathloss_exp);
  const double gain = mix * path;

  const double snr_per_gain = p_tx / (ch.noise_power_w + ch.interference_w);
  const double rate = ch.bandwidth_gu_hz * std::log2(1.0 + snr_per_gain * gain);
  InverseRate out;
  if (!(rate > 0.0)) throw Error(ErrorCode::kZeroRate, "GU-UAV link has zero rate");
  out.value = 1.0 / rate;
  if (rho > 0.0) {
    const double dtheta = rad_to_deg(-h / d2);
    const double dp = ch.los_b * p * (1.0 - p) * dtheta;
    const double dpath = -ch.pathloss_exp * path / d * (rho / d);
    const double dgain = (1.0 - ch.nlos_atten) * dp * path + mix * dpath;
    const double drate =
        ch.bandwidth_gu_hz / std::log(2.0) * snr_per_gain / (1.0 + snr_per_gain * gain) * dgain;
    const double dinv = -drate / (rate * rate);
    out.grad = (dinv / rho) * r;
  }
  return out;
}

InverseRate inverse_rate_uav_hap(const Position3D& uav, const Position3D& hap,
                                 const ChannelParams& ch, double p_tx) {
  const double d = distance(uav, hap);
  if (!(d > 0.0)) throw Error(ErrorCode::kDomain, "UAV and HAP positions coincide");
  const double k = uh_snr_scale(ch, p_tx);
  const double loss = free_space_loss(d, ch);
  const double rate = ch.bandwidth_uh_hz * std::log2(1.0 + k * loss);
  if (!(rate > 0.0)) throw Error(ErrorCode::kZeroRate, "UAV-HAP link has zero rate");
  const double dloss = -2.0 * loss / d;
  const double drate = ch.bandwidth_uh_hz / std::log(2.0) * k / (1.0 + k * loss) * dloss;
  InverseRate out;
  out.value = 1.0 / rate;
  out.grad = (-drate / (rate * rate) / d) * (uav.horizontal() - hap.horizontal());
  return out;
}

SlotCost slot_cost(int i, int n, double bits, const OffloadDecision& dec,
                   const TrajectoryPlan& traj, const Scenario& scenario) {
  const GroundUser& gu = scenario.gus[i];
  const double cycles = bits * gu.cpu_cycles_per_bit;
  SlotCost cost;
  const int j = dec.collector(i, n);
  if (j < 0) {
    cost.delay = cycles / gu.local_cpu_hz;
    cost.gu_energy = gu.capacitance * cycles * gu.local_cpu_hz * gu.local_cpu_hz;
    return cost;
  }
  const Uav& uav = scenario.uavs[j];
  const Position3D q = traj.serving_position(j, n);
  const double r_ug = rate_gu_uav(gu_uav_gain(gu.position, q, scenario.channel),
                                  scenario.channel, gu.tx_power_w);
  if (!(r_ug > 0.0)) throw Error(ErrorCode::kZeroRate, "GU-UAV link has zero rate");
  const double upload = bits / r_ug;
  cost.delay = upload;
  cost.gu_energy = gu.tx_power_w * upload;
  if (dec.y(i, j, n)) {
    cost.delay += cycles / uav.cpu_hz;
    cost.uav_compute_energy = uav.capacitance * cycles * uav.cpu_hz * uav.cpu_hz;
  }
  if (dec.z(i, j, n)) {
    const Hap& hap = scenario.hap;
    const double r_uh = rate_uav_hap(q, hap.position, scenario.channel, uav.tx_power_w);
    if (!(r_uh > 0.0)) throw Error(ErrorCode::kZeroRate, "UAV-HAP link has zero rate");
    const double relay = bits / r_uh;
    cost.delay += relay + cycles / hap.cpu_hz;
    cost.uav_relay_energy = uav.tx_power_w * relay;
    cost.hap_energy = hap.capacitance * cycles * hap.cpu_hz * hap.cpu_hz;
  }
  return cost;
}

double propulsion_power(double v, const PropulsionParams& pp) {
  if (!(v >= 0.0)) throw Error(ErrorCode::kDomain, "negative speed");
  const double v2 = v * v;
  const double blade = pp.blade_power_w * (1.0 + 3.0 * v2 / (pp.tip_speed_mps * pp.tip_speed_mps));
  const double parasite =
      0.5 * pp.drag_ratio * pp.air_density * pp.rotor_solidity * pp.rotor_area_m2 * v2 * v;
  const double v0sq = pp.mean_rotor_velocity * pp.mean_rotor_velocity;
  double induced = 0.0;
  if (pp.induced_form == InducedPowerForm::kAsPrinted) {
    const double inner = std::sqrt(1.0 + v2 * v2 / (4.0 * v0sq)) - v2 / (2.0 * v0sq);
    induced = pp.induced_power_w * std::sqrt(std::max(inner, 0.0));
  } else {
    const double inner = std::sqrt(1.0 + v2 * v2 / (4.0 * v0sq * v0sq)) - v2 / (2.0 * v0sq);
    induced = pp.induced_power_w * std::sqrt(std::max(inner, 0.0));
  }
  return blade + parasite + induced;
}

double hover_power(const PropulsionParams& pp) { return pp.blade_power_w + pp.induced_power_w; }

double flight_energy(int j, int w, const TrajectoryPlan& traj, const Scenario& scenario) {
  const Uav& uav = scenario.uavs[j];
  const double tau = scenario.time.slot_len_s;
  const double dist = norm(traj.waypoint(j, w) - traj.waypoint(j, w - 1));
  const double t_fly = dist / uav.cruise_speed_mps;
  if (t_fly > tau * (1.0 + 1e-9))
    throw Error(ErrorCode::kSpeedViolation,
                "UAV " + std::to_string(j) + " cannot fly segment " + std::to_string(w) +
                    " within one slot");
  const double p_fly = propulsion_power(uav.cruise_speed_mps, scenario.propulsion);
  const double p_hov = hover_power(scenario.propulsion);
  return p_fly * t_fly + p_hov * (tau - t_fly);
}

double total_uav_energy(int j, const OffloadDecision& dec, const TrajectoryPlan& traj,
                        const Scenario& scenario, const std::vector<double>& bits) {
  const int I = scenario.num_gus(), N = scenario.num_slots();
  double total = 0.0;
  for (int n = 0; n < N; ++n) {
    for (int i = 0; i < I; ++i) {
      if (!dec.x(i, j, n)) continue;
      const SlotCost c = slot_cost(i, n, bits[static_cast<std::size_t>(i) * N + n], dec, traj,
                                   scenario);
      total += c.uav_compute_energy + c.uav_relay_energy;
    }
    total += flight_energy(j, n + 1, traj, scenario);
  }
  return total;
}

}  // namespace drcoto
