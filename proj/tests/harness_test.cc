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
#include "drcoto/harness.h"

#include <cmath>

#include "drcoto/defaults.h"
#include "drcoto/error.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace drcoto {
namespace {

TEST(GenerateScenarioTest, DefaultsAndOverrides) {
  const Scenario s = generate_scenario(1);
  EXPECT_EQ(s.num_gus(), defaults::kNumGus);
  EXPECT_EQ(s.num_uavs(), defaults::kNumUavs);
  EXPECT_EQ(s.num_slots(), defaults::kNumSlots);
  EXPECT_TRUE(validate_scenario(s).ok()) << validate_scenario(s).summary();
  for (const GroundUser& g : s.gus) {
    EXPECT_GE(g.position.x, 0.0);
    EXPECT_LE(g.position.x, s.area_x_m);
    EXPECT_EQ(g.position.z, 0.0);
  }
  ScenarioOverrides ov;
  ov.num_gus = 4;
  ov.num_uavs = 1;
  ov.num_slots = 6;
  ov.uav_quota = 2;
  ov.hap_quota = 1;
  const Scenario t = generate_scenario(1, ov);
  EXPECT_EQ(t.num_gus(), 4);
  EXPECT_EQ(t.num_uavs(), 1);
  EXPECT_EQ(t.num_slots(), 6);
  EXPECT_EQ(t.uavs[0].quota, 2);
  EXPECT_EQ(t.hap.quota, 1);
  EXPECT_TRUE(validate_scenario(t).ok());
}

TEST(GenerateScenarioTest, DeterministicPerSeed) {
  const Scenario a = generate_scenario(42), b = generate_scenario(42), c = generate_scenario(43);
  EXPECT_EQ(scenario_to_json({a, {}}), scenario_to_json({b, {}}));
  EXPECT_NE(scenario_to_json({a, {}}), scenario_to_json({c, {}}));
  EXPECT_TRUE(validate_trajectory(straight_line_plan(a), a).ok());
}

TEST(HistoryTest, EmpiricalApproachesTruth) {
  const Scenario s = testing::small_scenario(1, 3, 1, 2);
  const SampleSpace space = testing::default_space();
  const History h = generate_history(7, s, space, 100000);
  ASSERT_EQ(h.samples.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(h.truths[i].valid());
    const Distribution ref = build_reference(h.samples[i], space);
    EXPECT_LT(l1_distance(ref, h.truths[i]), 0.05);
    for (double v : h.samples[i]) EXPECT_GE(space.bin_of(v), 0);
  }
}

TEST(HistoryTest, SingleSampleGivesUnitMass) {
  const Scenario s = testing::small_scenario(1, 2, 1, 2);
  const SampleSpace space = testing::default_space();
  const AmbiguitySet a = build_ambiguity(generate_history(3, s, space, 1), space, 0.3);
  for (const Distribution& d : a.references) {
    int ones = 0;
    for (double p : d.probs) ones += p == 1.0;
    EXPECT_EQ(ones, 1);
  }
  EXPECT_EQ(a.radius, 0.3);
  EXPECT_THROW(generate_history(3, s, space, 0), Error);
}

TEST(DatasetTest, ValuesFromTheSampleSpace) {
  const SampleSpace space = testing::default_space();
  const std::vector<Distribution> truths = {Distribution::unit(3, 5),
                                            Distribution{{0.2, 0.2, 0.2, 0.2, 0.2}}};
  const auto d = generate_datasets(9, truths, space, 7);
  ASSERT_EQ(d.size(), 7u);
  for (const auto& row : d) {
    ASSERT_EQ(row.size(), 2u);
    EXPECT_EQ(row[0], space.values[3]);
    EXPECT_NE(std::find(space.values.begin(), space.values.end(), row[1]), space.values.end());
  }
  EXPECT_EQ(generate_datasets(9, truths, space, 7), d);
}

TEST(EvaluateActualTest, PopulationStatistics) {
  const Scenario s = testing::small_scenario(2, 2, 1, 3);
  SolveReport r;
  r.decisions = OffloadDecision(2, 1, 3);
  r.trajectories = straight_line_plan(s);
  const double lo = 5e5, hi = 1.5e6;
  const std::vector<std::vector<double>> data = {{lo, lo}, {hi, hi}, {lo, lo}, {hi, hi}};
  const ActualDelay a = evaluate_actual(r, data, s);
  auto total = [&](double bits) {
    double t = 0.0;
    for (const GroundUser& g : s.gus) t += 3 * bits * g.cpu_cycles_per_bit / g.local_cpu_hz;
    return t;
  };
  EXPECT_NEAR(a.mean, 0.5 * (total(lo) + total(hi)), 1e-12);
  EXPECT_NEAR(a.std, 0.5 * (total(hi) - total(lo)), 1e-12);
  EXPECT_THROW(evaluate_actual(r, {{lo}}, s), Error);
}

TEST(MethodTest, RoundTrip) {
  for (Method m : {Method::kDO, Method::kSO, Method::kRO, Method::kDRCOTO})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("XX"), Error);
}

TEST(ExperimentConfigTest, ParsesAndRejects) {
  const ExperimentConfig c = parse_experiment_json(R"({
    "seed": 5, "gu_counts": [2, 3], "methods": ["SO", "DRCOTO"], "num_slots": 2,
    "timing": false, "solve": {"benders_max": 7, "master_node_limit": 50}})");
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.gu_counts, (std::vector<int>{2, 3}));
  EXPECT_EQ(c.methods, (std::vector<Method>{Method::kSO, Method::kDRCOTO}));
  EXPECT_EQ(c.solve.tol.benders_max, 7);
  EXPECT_EQ(c.solve.master.node_limit, 50);
  EXPECT_FALSE(c.timing);
  EXPECT_EQ(c.eps, 0.3);
  EXPECT_THROW(parse_experiment_json(R"({"sed": 1})"), Error);
  EXPECT_THROW(parse_experiment_json(R"({"solve": {"x": 1}})"), Error);
  EXPECT_THROW(parse_experiment_json(R"({"gu_counts": []})"), Error);
  EXPECT_THROW(parse_experiment_json(R"({"eps": -1})"), Error);
  EXPECT_THROW(parse_experiment_json("[1]"), Error);
  EXPECT_THROW(parse_experiment_json("{"), Error);
}

ExperimentConfig tiny_sweep() {
  ExperimentConfig c;
  c.gu_counts = {2, 3};
  c.eps_values = {0.1, 0.5};
  c.quota_values = {1, 2};
  c.num_slots = 2;
  c.history_len = 50;
  c.eval_datasets = 3;
  c.timing = false;
  return c;
}

TEST(SweepTest, TablesAndDeterminism) {
  const SweepResult a = run_sweep(tiny_sweep());
  EXPECT_EQ(a.objective.rows().size(), 4u * 2 + 2 + 2);
  EXPECT_EQ(a.actual.rows().size(), a.objective.rows().size());
  EXPECT_EQ(a.failed_cells, 0);
  EXPECT_EQ(a.audit_failures, 0);
  EXPECT_EQ(a.checks.rows().size(), a.trend_checks.size());
  for (const auto& row : a.objective.rows()) EXPECT_EQ(row.back(), "0");
  const SweepResult b = run_sweep(tiny_sweep());
  EXPECT_EQ(a.objective.str(), b.objective.str());
  EXPECT_EQ(a.actual.str(), b.actual.str());
  EXPECT_EQ(a.checks.str(), b.checks.str());
}

TEST(TablesTest, Shapes) {
  const Scenario s = testing::small_scenario(1, 2, 2, 3);
  const TrajectoryPlan p = straight_line_plan(s);
  EXPECT_EQ(trajectory_table(p).rows().size(), 2u * 4);
  OffloadDecision d(2, 2, 3);
  d.compute_on_uav(1, 0, 2);
  const CsvTable dt = decision_table(d);
  EXPECT_EQ(dt.rows().size(), 2u * 2 * 3);
  EXPECT_EQ(dt.header(), (std::vector<std::string>{"i", "j", "n", "x", "y", "z"}));
  SolveReport r;
  r.ub_trace = {3.0, 2.0};
  r.lb_trace = {1.0, 1.5};
  EXPECT_EQ(bounds_table(r).rows().size(), 2u);
}

}  // namespace
}  // namespace drcoto
