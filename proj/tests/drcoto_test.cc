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
#include "drcoto/drcoto.h"

#include <algorithm>
#include <cmath>

#include "drcoto/baselines.h"
#include "drcoto/cost_model.h"
#include "drcoto/error.h"
#include "drcoto/physics.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace drcoto {
namespace {

TEST(InitialFeasibleTest, AllLocalWhenBudgetsAllow) {
  Scenario s = testing::small_scenario(1, 3, 2, 3);
  testing::relax_budgets(&s);
  s.time.slot_len_s = 50.0;
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(1, s, space, 0.3);
  const InitialPoint p = initial_feasible(s, amb);
  EXPECT_FALSE(p.dec.any_offload());
  EXPECT_EQ(p.dists, amb.references);
}

TEST(InitialFeasibleTest, RepairsSlowCells) {
  Scenario s = testing::small_scenario(2, 4, 2, 3);
  testing::relax_budgets(&s);
  s.gus[1].local_cpu_hz = 1e7;  // local delay far beyond the slot
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(2, s, space, 0.3);
  const InitialPoint p = initial_feasible(s, amb);
  for (int n = 0; n < 3; ++n) EXPECT_GE(p.dec.collector(1, n), 0);
  EXPECT_TRUE(audit_solution(p.dec, p.plan, amb.references, space, s).ok());
}

TEST(InitialFeasibleTest, ThrowsWhenNothingFits) {
  Scenario s = testing::small_scenario(2, 2, 1, 2, 0, 0);
  s.gus[0].local_cpu_hz = 1e6;
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(2, s, space, 0.3);
  try {
    initial_feasible(s, amb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoFeasibleStart);
  }
}

TEST(DrcotoTest, ZeroQuotasGiveLocalWorstCase) {
  Scenario s = testing::small_scenario(3, 3, 2, 3, 0, 0);
  testing::relax_budgets(&s);
  const SampleSpace space = testing::default_space();
  for (double eps : {0.0, 0.2, 0.7, 2.0}) {
    const AmbiguitySet amb = testing::seeded_ambiguity(4, s, space, eps);
    const SolveReport r = drcoto_solve(s, amb);
    EXPECT_FALSE(r.decisions.any_offload());
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) {
      std::vector<double> p = amb.references[i].probs;
      double move = std::min(eps / 2.0, 1.0 - p[4]);
      p[4] += move;
      for (int k = 0; k < 4 && move > 0.0; ++k) {
        const double take = std::min(move, p[k]);
        p[k] -= take;
        move -= take;
      }
      for (int k = 0; k < 5; ++k)
        expect += p[k] * 3 * s.per_slot_bits(space.values[k]) * s.gus[i].cpu_cycles_per_bit /
                  s.gus[i].local_cpu_hz;
    }
    EXPECT_NEAR(r.objective, expect, 1e-9 * expect) << "eps " << eps;
    EXPECT_TRUE(r.converged);
  }
}

TEST(DrcotoTest, TracesAreMonotoneWithinEachOuterStep) {
  const Scenario s = testing::small_scenario(5, 4, 2, 3);
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(5, s, space, 0.3);
  const SolveReport r = drcoto_solve(s, amb);
  ASSERT_FALSE(r.steps.empty());
  for (std::size_t k = 1; k < r.steps.size(); ++k) {
    const BendersStep& a = r.steps[k - 1];
    const BendersStep& b = r.steps[k];
    EXPECT_LE(b.lb, b.ub + 1e-9);
    if (a.outer != b.outer) continue;
    EXPECT_LE(b.ub, a.ub);
    EXPECT_GE(b.lb, a.lb);
  }
  EXPECT_EQ(r.outer_iters, static_cast<int>(r.outer_trace.size()));
  EXPECT_EQ(r.benders_iters, static_cast<int>(r.steps.size()));
  EXPECT_EQ(r.objective, r.outer_trace.back());
  EXPECT_TRUE(audit_solution(r.decisions, r.trajectories, r.worst_dists, space, s).ok());
}

TEST(DrcotoTest, WorstDistributionsStayInTheBall) {
  const Scenario s = testing::small_scenario(6, 3, 2, 3);
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(6, s, space, 0.4);
  const SolveReport r = drcoto_solve(s, amb);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(r.worst_dists[i].valid());
    EXPECT_LE(l1_distance(r.worst_dists[i], amb.references[i]), 0.4 + 1e-9);
  }
  const WorstCaseInputs in = worst_case_inputs(r.decisions, r.trajectories, s, space);
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 5; ++k) d += r.worst_dists[i].probs[k] * in.costs[i][k];
  EXPECT_NEAR(d, r.objective, 1e-9 * d);
}

TEST(DrcotoTest, WorstCaseNotBelowReferenceValue) {
  const SampleSpace space = testing::default_space();
  for (std::uint64_t seed = 11; seed <= 14; ++seed) {
    const Scenario s = testing::small_scenario(seed, 4, 2, 3);
    const AmbiguitySet amb = testing::seeded_ambiguity(seed, s, space, 0.3);
    const SolveReport r = drcoto_solve(s, amb);
    const double at_refs =
        expected_costs(r.decisions, r.trajectories, s, expected_bits(amb.references, space, s))
            .total_delay;
    EXPECT_GE(r.objective, at_refs - 1e-6);
  }
}

TEST(DrcotoTest, Deterministic) {
  const Scenario s = testing::small_scenario(7, 4, 2, 3);
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(7, s, space, 0.3);
  const SolveReport a = drcoto_solve(s, amb), b = drcoto_solve(s, amb);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.decisions, b.decisions);
  EXPECT_EQ(a.trajectories, b.trajectories);
  EXPECT_EQ(a.outer_trace, b.outer_trace);
}

TEST(DrcotoTest, ZeroRadiusMatchesSampleAverage) {
  const Scenario s = testing::small_scenario(8, 3, 2, 3);
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(8, s, space, 0.0);
  const SolveReport dr = drcoto_solve(s, amb);
  const SolveReport so = solve_baseline(BaselineMode::kSO, s, amb);
  EXPECT_NEAR(dr.objective, so.objective, 1e-6 * so.objective);
  EXPECT_EQ(dr.worst_dists, amb.references);
}

TEST(DrcotoTest, FullRadiusMatchesRobustWithSlackBudgets) {
  Scenario s = testing::small_scenario(9, 3, 2, 3);
  testing::relax_budgets(&s);
  const SampleSpace space = testing::default_space();
  const AmbiguitySet amb = testing::seeded_ambiguity(9, s, space, 2.0);
  const SolveReport dr = drcoto_solve(s, amb);
  const SolveReport ro = solve_baseline(BaselineMode::kRO, s, amb);
  EXPECT_NEAR(dr.objective, ro.objective, 1e-6 * ro.objective);
  for (const Distribution& d : dr.worst_dists) EXPECT_EQ(d, Distribution::unit(4, 5));
}

}  // namespace
}  // namespace drcoto
