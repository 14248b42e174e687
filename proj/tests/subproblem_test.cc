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
#include "drcoto/subproblem.h"

#include <cmath>

#include "drcoto/cost_model.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace drcoto {
namespace {

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

TEST(SpObjectiveTest, PenaltyAccounting) {
  Scenario s = testing::small_scenario(2, 3, 2, 3);
  OffloadDecision d(3, 2, 3);
  d.compute_on_uav(0, 0, 1);
  const TrajectoryPlan t = straight_line_plan(s);
  const std::vector<double> bits(3, 1e6);
  const SpObjective a = sp_objective(d, t, s, bits, 100.0);
  EXPECT_NEAR(a.value, a.delay + 100.0 * a.slack, 1e-12);
  EXPECT_EQ(a.feasible, a.slack == 0.0);
  EXPECT_NEAR(a.delay, expected_costs(d, t, s, bits).total_delay, 1e-12);
  s.uavs[0].cpu_hz = 1e3;  // the offloaded part now misses its slot
  const SpObjective b = sp_objective(d, t, s, bits, 100.0);
  EXPECT_FALSE(b.feasible);
  EXPECT_GT(b.slack, 0.0);
}

TEST(LinearizationTest, ExactAtReference) {
  Rng rng(3);
  const Scenario s = testing::small_scenario(4, 4, 2, 4);
  const std::vector<double> bits = {4e5, 9e5, 1.3e6, 2e6};
  for (int t = 0; t < 8; ++t) {
    const OffloadDecision d = testing::random_decision(rng, s);
    const TrajectoryPlan ref = testing::random_valid_plan(rng, s, 20.0);
    const SpLinearization lin = linearize_sp(ref, d, s, bits, 10.0);
    EXPECT_NEAR(lin.model_at_ref, sp_objective(d, ref, s, bits, 1e4).value,
                1e-9 * std::max(1.0, lin.model_at_ref));
    const std::vector<double> fd = testing::fd_delay_gradient(d, ref, s, bits, 1e-3);
    if (d.any_offload()) EXPECT_LT(rel_err(lin.gradient, fd), 1e-4);
  }
}

TEST(DelayGradientTest, MatchesFiniteDifferences) {
  Rng rng(21);
  const Scenario s = testing::small_scenario(9, 5, 3, 5);
  const std::vector<double> bits = {2e5, 5e5, 1e6, 1.5e6, 2e6};
  for (int t = 0; t < 10; ++t) {
    const OffloadDecision d = testing::random_decision(rng, s, 0.7);
    const TrajectoryPlan p = testing::random_valid_plan(rng, s, 40.0);
    const std::vector<double> full = delay_gradient(d, p, s, bits);
    std::vector<double> free;
    for (int j = 0; j < 3; ++j)
      for (int w = 1; w < 5; ++w) {
        free.push_back(full[2 * (j * 6 + w)]);
        free.push_back(full[2 * (j * 6 + w) + 1]);
      }
    EXPECT_LT(rel_err(free, testing::fd_delay_gradient(d, p, s, bits, 1e-3)), 1e-4);
  }
}

TEST(SolveSpTest, AllLocalStopsAfterOneLp) {
  const Scenario s = testing::small_scenario(1, 3, 2, 4);
  const OffloadDecision d(3, 2, 4);
  const TrajectoryPlan init = straight_line_plan(s);
  const SpResult r = solve_sp(d, std::vector<double>(3, 1e6), init, s);
  EXPECT_EQ(r.lp_solves, 1);
  EXPECT_EQ(r.plan, init);
}

TEST(SolveSpTest, TraceDecreasesAndPlanValidates) {
  Rng rng(4);
  const Scenario s = testing::small_scenario(12, 5, 2, 5);
  const std::vector<double> bits = {3e5, 8e5, 1.1e6, 1.6e6, 2e6};
  for (int t = 0; t < 5; ++t) {
    const OffloadDecision d = testing::random_decision(rng, s, 0.6);
    const TrajectoryPlan init = straight_line_plan(s);
    const SpResult r = solve_sp(d, bits, init, s);
    const double start = sp_objective(d, init, s, bits, 1e4).value;
    double prev = start;
    for (double v : r.value_trace) {
      EXPECT_LT(v, prev);
      prev = v;
    }
    EXPECT_LE(r.objective.value, start);
    EXPECT_TRUE(validate_trajectory(r.plan, s).ok()) << validate_trajectory(r.plan, s).summary();
  }
}

TEST(SolveSpTest, SingleLinkPullMatchesGrid) {
  // One GU offloads to one UAV over two slots; the lone free waypoint should
  // settle where the grid over its reachable disc finds the minimum.
  Scenario s = testing::small_scenario(2, 1, 1, 2);
  testing::relax_budgets(&s);
  OffloadDecision d(1, 1, 2);
  d.compute_on_uav(0, 0, 0);
  const std::vector<double> bits = {1e6};
  ScaOptions o;
  o.tol = 1e-9;
  o.max_iters = 200;
  const SpResult r = solve_sp(d, bits, straight_line_plan(s), s, o);
  TrajectoryPlan probe = straight_line_plan(s);
  double best = kInf;
  const double reach = s.uavs[0].cruise_speed_mps * s.time.slot_len_s;
  const Vec2 a = probe.waypoint(0, 0);
  const double step = reach / 200.0;
  for (double x = a.x - reach; x <= a.x + reach; x += step)
    for (double y = a.y - reach; y <= a.y + reach; y += step) {
      probe.waypoint(0, 1) = {x, y};
      if (!validate_trajectory(probe, s).ok()) continue;
      best = std::min(best, expected_costs(d, probe, s, bits).total_delay);
    }
  ASSERT_LT(best, kInf);
  // The polygonal speed row gives up a sliver of the reachable disc.
  EXPECT_LE(r.objective.value, best + 1e-3 * best);
  EXPECT_GE(r.objective.value, best - 1e-6 * best);
}

}  // namespace
}  // namespace drcoto
