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

#include <cmath>

#include "drcoto/error.h"
#include "drcoto/harness.h"
#include "drcoto/units.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace drcoto {
namespace {

// Values below were evaluated with 30-digit arithmetic.
constexpr double kLos45 = 0.96769189994724233626;
constexpr double kLosAtA = 0.09425070688030160226;
constexpr double kFsplAt20km = 3.56207286242593727732e-13;
constexpr double kGainOverhead = 2.49995014907580604035e-5;

ChannelParams unit_channel() {
  ChannelParams ch = generate_scenario(1).channel;
  ch.beta0 = 1.0;
  ch.pathloss_exp = 2.0;
  ch.nlos_atten = 0.2;
  ch.los_a = 9.61;
  ch.los_b = 0.16;
  return ch;
}

TEST(LosTest, ClosedFormValues) {
  EXPECT_NEAR(los_probability(9.61, 9.61, 0.16), kLosAtA, 1e-15);
  EXPECT_NEAR(los_probability(45.0, 9.61, 0.16), kLos45, 1e-14);
  EXPECT_NEAR(los_probability(90.0, 9.61, 50.0), 1.0, 1e-12);
}

TEST(LosTest, DomainErrors) {
  EXPECT_THROW(los_probability(-0.1, 9.61, 0.16), Error);
  EXPECT_THROW(los_probability(90.5, 9.61, 0.16), Error);
}

TEST(GainTest, OverheadUav) {
  const ChannelParams ch = unit_channel();
  EXPECT_NEAR(gu_uav_gain({10, 20, 0}, {10, 20, 200}, ch), kGainOverhead, 1e-18);
}

TEST(GainTest, NoNlosPenaltyMeansPureDistance) {
  ChannelParams ch = unit_channel();
  ch.nlos_atten = 1.0;
  ch.beta0 = 1e-4;
  const Position3D gu{0, 0, 0}, uav{300, 400, 200};
  const double d2 = 300.0 * 300 + 400.0 * 400 + 200.0 * 200;
  EXPECT_NEAR(gu_uav_gain(gu, uav, ch), 1e-4 / d2, 1e-20);
}

TEST(GainTest, DecreasesWithHorizontalDistance) {
  const ChannelParams ch = generate_scenario(1).channel;
  double prev = gu_uav_gain({0, 0, 0}, {1, 0, 200}, ch);
  for (double r = 2; r < 3000; r *= 1.3) {
    const double g = gu_uav_gain({0, 0, 0}, {r, 0, 200}, ch);
    EXPECT_LT(g, prev) << r;
    prev = g;
  }
}

TEST(RateTest, ShannonIdentities) {
  ChannelParams ch = unit_channel();
  ch.bandwidth_gu_hz = 1e6;
  ch.noise_power_w = 1e-13;
  ch.interference_w = 1e-12;
  const double n0 = ch.noise_power_w + ch.interference_w;
  EXPECT_EQ(rate_gu_uav(0.0, ch, 0.1), 0.0);
  EXPECT_NEAR(rate_gu_uav(n0, ch, 1.0), 1e6, 1e-6);
  EXPECT_NEAR(rate_gu_uav(15.0 * n0, ch, 1.0), 4e6, 1e-6);
}

TEST(RateTest, UavHapLink) {
  ChannelParams ch = generate_scenario(1).channel;
  EXPECT_NEAR(free_space_loss(2e4, ch) / kFsplAt20km, 1.0, 1e-12);
  EXPECT_NEAR(free_space_loss(1000.0, ch) / free_space_loss(2000.0, ch), 4.0, 1e-12);
  // Scale the antenna gain so that the SNR is exactly one at 20 km.
  const double p = 1.0;
  ch.antenna_gain = ch.bandwidth_uh_hz * ch.boltzmann * ch.noise_temp_k /
                    (p * ch.total_loss * free_space_loss(2e4, ch));
  EXPECT_NEAR(rate_uav_hap({0, 0, 0}, {0, 0, 2e4}, ch, p), ch.bandwidth_uh_hz, 1e-3);
}

TEST(RateTest, NonincreasingInDistance) {
  const Scenario s = generate_scenario(1);
  double prev = kInf;
  for (double r = 0; r < 2e4; r += 250) {
    const double v = rate_uav_hap({s.hap.position.x + r, s.hap.position.y, 200}, s.hap.position, s.channel, 1.0);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(InverseRateTest, GradientsMatchFiniteDifferences) {
  const Scenario s = generate_scenario(1);
  const Position3D gu{400, 300, 0};
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const Position3D q{rng.uniform(0, 1000), rng.uniform(0, 1000), 200};
    const InverseRate a = inverse_rate_gu_uav(gu, q, s.channel, 0.1);
    const InverseRate b = inverse_rate_uav_hap(q, s.hap.position, s.channel, 1.0);
    const double h = 1e-3;
    auto fx = [&](auto f, double dx, double dy) { return f(Position3D{q.x + dx, q.y + dy, q.z}); };
    auto ug = [&](const Position3D& p) { return inverse_rate_gu_uav(gu, p, s.channel, 0.1).value; };
    auto uh = [&](const Position3D& p) {
      return inverse_rate_uav_hap(p, s.hap.position, s.channel, 1.0).value;
    };
    const double gx = (fx(ug, h, 0) - fx(ug, -h, 0)) / (2 * h);
    const double gy = (fx(ug, 0, h) - fx(ug, 0, -h)) / (2 * h);
    EXPECT_NEAR(a.grad.x, gx, 1e-5 * std::hypot(gx, gy) + 1e-18);
    EXPECT_NEAR(a.grad.y, gy, 1e-5 * std::hypot(gx, gy) + 1e-18);
    const double hx = (fx(uh, h, 0) - fx(uh, -h, 0)) / (2 * h);
    const double hy = (fx(uh, 0, h) - fx(uh, 0, -h)) / (2 * h);
    EXPECT_NEAR(b.grad.x, hx, 1e-4 * std::hypot(hx, hy) + 1e-20);
    EXPECT_NEAR(b.grad.y, hy, 1e-4 * std::hypot(hx, hy) + 1e-20);
    EXPECT_NEAR(a.value, 1.0 / rate_gu_uav(gu_uav_gain(gu, q, s.channel), s.channel, 0.1),
                1e-15 * a.value);
  }
}

class SlotCostTest : public ::testing::Test {
 protected:
  Scenario s = testing::small_scenario(4, 2, 2, 3);
  TrajectoryPlan traj = straight_line_plan(s);
};

TEST_F(SlotCostTest, LocalFormula) {
  s.gus[0].cpu_cycles_per_bit = 1e3;
  s.gus[0].local_cpu_hz = 1e9;
  OffloadDecision d(2, 2, 3);
  const SlotCost c = slot_cost(0, 1, 2e5, d, traj, s);
  EXPECT_NEAR(c.delay, 0.2, 1e-15);
  EXPECT_NEAR(c.gu_energy, s.gus[0].capacitance * 2e8 * 1e18, 1e-15);
  EXPECT_EQ(c.uav_compute_energy + c.uav_relay_energy + c.hap_energy, 0.0);
}

TEST_F(SlotCostTest, IndicatorStructure) {
  OffloadDecision d(2, 2, 3);
  d.compute_on_uav(0, 1, 2);
  d.relay_to_hap(1, 0, 2);
  const double bits = 1e6;
  const Position3D q1 = traj.serving_position(1, 2), q0 = traj.serving_position(0, 2);
  const double r_ug = rate_gu_uav(gu_uav_gain(s.gus[0].position, q1, s.channel), s.channel,
                                  s.gus[0].tx_power_w);
  const SlotCost y = slot_cost(0, 2, bits, d, traj, s);
  EXPECT_NEAR(y.delay, bits / r_ug + bits * s.gus[0].cpu_cycles_per_bit / s.uavs[1].cpu_hz,
              1e-12);
  EXPECT_EQ(y.hap_energy, 0.0);
  EXPECT_EQ(y.uav_relay_energy, 0.0);
  EXPECT_NEAR(y.gu_energy, s.gus[0].tx_power_w * bits / r_ug, 1e-15);

  const SlotCost z = slot_cost(1, 2, bits, d, traj, s);
  const double r_ug1 = rate_gu_uav(gu_uav_gain(s.gus[1].position, q0, s.channel), s.channel,
                                   s.gus[1].tx_power_w);
  const double r_uh = rate_uav_hap(q0, s.hap.position, s.channel, s.uavs[0].tx_power_w);
  EXPECT_NEAR(z.delay,
              bits / r_ug1 + bits / r_uh + bits * s.gus[1].cpu_cycles_per_bit / s.hap.cpu_hz,
              1e-12);
  EXPECT_EQ(z.uav_compute_energy, 0.0);
  EXPECT_NEAR(z.uav_relay_energy, s.uavs[0].tx_power_w * bits / r_uh, 1e-12);
  EXPECT_GT(z.hap_energy, 0.0);
}

TEST_F(SlotCostTest, LinearInSize) {
  OffloadDecision d(2, 2, 3);
  d.compute_on_uav(0, 0, 0);
  d.relay_to_hap(1, 1, 0);
  for (int i = 0; i < 2; ++i) {
    const SlotCost a = slot_cost(i, 0, 3e5, d, traj, s);
    const SlotCost b = slot_cost(i, 0, 6e5, d, traj, s);
    EXPECT_NEAR(b.delay, 2 * a.delay, 1e-14 * b.delay);
    EXPECT_NEAR(b.gu_energy, 2 * a.gu_energy, 1e-14 * b.gu_energy);
    EXPECT_NEAR(b.uav_compute_energy, 2 * a.uav_compute_energy, 1e-14 * b.uav_compute_energy);
    EXPECT_NEAR(b.uav_relay_energy, 2 * a.uav_relay_energy, 1e-14 * b.uav_relay_energy);
    EXPECT_NEAR(b.hap_energy, 2 * a.hap_energy, 1e-14 * b.hap_energy);
  }
}

TEST_F(SlotCostTest, LocalCostIgnoresTrajectory) {
  OffloadDecision d(2, 2, 3);
  TrajectoryPlan moved = traj;
  moved.waypoint(0, 1).y += 13.0;
  const SlotCost a = slot_cost(0, 0, 5e5, d, traj, s);
  const SlotCost b = slot_cost(0, 0, 5e5, d, moved, s);
  EXPECT_EQ(a.delay, b.delay);
  EXPECT_EQ(a.gu_energy, b.gu_energy);
}

TEST_F(SlotCostTest, ZeroRateIsAnError) {
  s.gus[0].tx_power_w = 0.0;
  OffloadDecision d(2, 2, 3);
  d.compute_on_uav(0, 0, 0);
  try {
    slot_cost(0, 0, 1e5, d, traj, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroRate);
  }
}

TEST(PropulsionTest, HoverAndTerms) {
  const PropulsionParams pp = generate_scenario(1).propulsion;
  EXPECT_DOUBLE_EQ(propulsion_power(0.0, pp), pp.blade_power_w + pp.induced_power_w);
  EXPECT_DOUBLE_EQ(hover_power(pp), pp.blade_power_w + pp.induced_power_w);

  const double v = pp.mean_rotor_velocity;
  PropulsionParams blade = pp, parasite = pp, induced = pp;
  blade.induced_power_w = 0.0;
  blade.drag_ratio = 0.0;
  EXPECT_NEAR(propulsion_power(v, blade),
              pp.blade_power_w * (1 + 3 * v * v / (pp.tip_speed_mps * pp.tip_speed_mps)), 1e-12);
  parasite.blade_power_w = 0.0;
  parasite.induced_power_w = 0.0;
  EXPECT_NEAR(propulsion_power(v, parasite),
              0.5 * pp.drag_ratio * pp.air_density * pp.rotor_solidity * pp.rotor_area_m2 * v * v * v,
              1e-12);
  induced.blade_power_w = 0.0;
  induced.drag_ratio = 0.0;
  // As printed: v^4 / (4 v0^2) under the inner root; at v = v0 that is v0^2 / 4.
  const double inner = std::sqrt(1.0 + v * v / 4.0) - 0.5;
  EXPECT_NEAR(propulsion_power(v, induced), pp.induced_power_w * std::sqrt(inner), 1e-12);
  induced.induced_form = InducedPowerForm::kStandard;
  EXPECT_NEAR(propulsion_power(v, induced),
              pp.induced_power_w * std::sqrt(std::sqrt(1.25) - 0.5), 1e-12);
}

TEST(PropulsionTest, ContinuousOnCruiseRange) {
  const PropulsionParams pp = generate_scenario(1).propulsion;
  double prev = propulsion_power(0.0, pp);
  for (double v = 1e-3; v <= 20.0; v += 1e-3) {
    const double p = propulsion_power(v, pp);
    EXPECT_LT(std::abs(p - prev), 0.5) << v;
    prev = p;
  }
}

TEST(FlightEnergyTest, SegmentCases) {
  Scenario s = testing::small_scenario(1, 2, 1, 4);
  const double tau = s.time.slot_len_s, v = s.uavs[0].cruise_speed_mps;
  const double p_f = propulsion_power(v, s.propulsion), p_h = hover_power(s.propulsion);
  TrajectoryPlan t = straight_line_plan(s);
  t.waypoint(0, 1) = t.waypoint(0, 0);
  EXPECT_NEAR(flight_energy(0, 1, t, s), p_h * tau, 1e-9);
  t.waypoint(0, 2) = t.waypoint(0, 1) + Vec2{v * tau, 0.0};
  EXPECT_NEAR(flight_energy(0, 2, t, s), p_f * tau, 1e-9);
  t.waypoint(0, 3) = t.waypoint(0, 2) + Vec2{0.0, v * tau / 2};
  EXPECT_NEAR(flight_energy(0, 3, t, s), (p_f + p_h) * tau / 2, 1e-9);
  t.waypoint(0, 4) = t.waypoint(0, 3) + Vec2{v * tau * 1.01, 0.0};
  EXPECT_THROW(flight_energy(0, 4, t, s), Error);
}

TEST(FlightEnergyTest, TotalUavEnergy) {
  Scenario s = testing::small_scenario(1, 2, 1, 3);
  const int N = s.num_slots();
  TrajectoryPlan t(1, N, s.uav_altitude());
  for (int w = 0; w <= N; ++w) t.waypoint(0, w) = s.uavs[0].start.horizontal();
  OffloadDecision d(2, 1, N);
  const std::vector<double> bits(2 * N, 1e6);
  const double hover = N * hover_power(s.propulsion) * s.time.slot_len_s;
  EXPECT_NEAR(total_uav_energy(0, d, t, s, bits), hover, 1e-9);

  d.relay_to_hap(1, 0, 2);
  const double relay = s.uavs[0].tx_power_w * 1e6 /
                       rate_uav_hap(t.serving_position(0, 2), s.hap.position, s.channel,
                                    s.uavs[0].tx_power_w);
  EXPECT_NEAR(total_uav_energy(0, d, t, s, bits), hover + relay, 1e-9);

  double per_slot = 0.0;
  for (int n = 0; n < N; ++n) {
    per_slot += flight_energy(0, n + 1, t, s);
    for (int i = 0; i < 2; ++i) {
      const SlotCost c = slot_cost(i, n, 1e6, d, t, s);
      if (d.x(i, 0, n)) per_slot += c.uav_compute_energy + c.uav_relay_energy;
    }
  }
  EXPECT_NEAR(total_uav_energy(0, d, t, s, bits), per_slot, 1e-9);
}

}  // namespace
}  // namespace drcoto
