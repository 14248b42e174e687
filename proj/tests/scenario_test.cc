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
#include <fstream>
#include <sstream>

#include "drcoto/error.h"
#include "drcoto/harness.h"
#include "drcoto/scenario_io.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracles.h"

namespace drcoto {
namespace {

using testing::small_scenario;

TEST(ScenarioTest, DefaultScenarioIsValid) {
  const Scenario s = generate_scenario(1);
  const ValidationResult v = validate_scenario(s);
  EXPECT_TRUE(v.ok()) << v.summary();
}

TEST(ScenarioTest, ReportsEveryViolation) {
  Scenario s = generate_scenario(1);
  s.uavs[1].start = s.uavs[0].start;
  s.uavs[2].quota = -1;
  s.gus[0].position.x = -5.0;
  const ValidationResult v = validate_scenario(s);
  EXPECT_TRUE(v.has("separation"));
  EXPECT_TRUE(v.has("uav_quota"));
  EXPECT_TRUE(v.has("area"));
}

TEST(ScenarioTest, UnreachableEndpointIsRejected) {
  Scenario s = generate_scenario(1);
  s.uavs[0].start.x = 0.0;
  s.uavs[0].end.x = 1000.0;
  EXPECT_TRUE(validate_scenario(s).has("uav_reach"));
}

TEST(DecisionTest, SettersKeepFlowBalance) {
  OffloadDecision d(2, 2, 3);
  d.compute_on_uav(0, 1, 2);
  EXPECT_TRUE(d.x(0, 1, 2));
  EXPECT_TRUE(d.y(0, 1, 2));
  EXPECT_FALSE(d.z(0, 1, 2));
  d.relay_to_hap(0, 0, 2);
  EXPECT_EQ(d.collector(0, 2), 0);
  EXPECT_FALSE(d.x(0, 1, 2));
  d.set_local(0, 2);
  EXPECT_EQ(d.collector(0, 2), -1);
  EXPECT_FALSE(d.any_offload());
}

TEST(DecisionTest, ValidationCatchesBrokenTensors) {
  const Scenario s = small_scenario(3, 4, 2, 2, 1, 1);
  OffloadDecision d(4, 2, 2);
  d.set_raw(0, 0, 0, true, true, true);
  EXPECT_TRUE(validate_decision(d, s).has("flow_balance"));

  OffloadDecision two(4, 2, 2);
  two.set_raw(0, 0, 0, true, true, false);
  two.set_raw(0, 1, 0, true, true, false);
  EXPECT_TRUE(validate_decision(two, s).has("single_collector"));

  OffloadDecision quota(4, 2, 2);
  quota.compute_on_uav(0, 0, 1);
  quota.compute_on_uav(1, 0, 1);
  EXPECT_TRUE(validate_decision(quota, s).has("uav_quota"));

  OffloadDecision hap(4, 2, 2);
  hap.relay_to_hap(0, 0, 1);
  hap.relay_to_hap(1, 1, 1);
  EXPECT_TRUE(validate_decision(hap, s).has("hap_quota"));

  OffloadDecision ok(4, 2, 2);
  ok.compute_on_uav(0, 0, 1);
  ok.compute_on_uav(1, 1, 1);
  ok.relay_to_hap(2, 0, 1);
  EXPECT_TRUE(validate_decision(ok, s).ok());
}

TEST(TrajectoryTest, StraightLineIsFeasible) {
  const Scenario s = generate_scenario(2);
  const TrajectoryPlan p = straight_line_plan(s);
  EXPECT_TRUE(validate_trajectory(p, s).ok()) << validate_trajectory(p, s).summary();
  EXPECT_EQ(p.waypoint(0, 0), s.uavs[0].start.horizontal());
  EXPECT_EQ(p.waypoint(2, s.num_slots()), s.uavs[2].end.horizontal());
}

TEST(TrajectoryTest, DetectsSpeedSeparationAndArea) {
  const Scenario s = generate_scenario(2);
  TrajectoryPlan p = straight_line_plan(s);
  p.waypoint(0, 3).y += 100.0;
  EXPECT_TRUE(validate_trajectory(p, s).has("speed"));

  TrajectoryPlan sep = straight_line_plan(s);
  sep.waypoint(1, 7) = sep.waypoint(0, 7) + Vec2{5.0, 0.0};
  EXPECT_TRUE(validate_trajectory(sep, s).has("separation"));

  TrajectoryPlan area = straight_line_plan(s);
  area.waypoint(0, 1) = {-1.0, 0.0};
  EXPECT_TRUE(validate_trajectory(area, s).has("area"));

  TrajectoryPlan end = straight_line_plan(s);
  end.waypoint(0, s.num_slots()).x += 1.0;
  EXPECT_TRUE(validate_trajectory(end, s).has("endpoint"));
}

TEST(ScenarioIoTest, JsonRoundTrip) {
  ScenarioConfig cfg{generate_scenario(5), testing::default_space().values};
  const ScenarioConfig back = parse_scenario_json(scenario_to_json(cfg));
  EXPECT_EQ(scenario_to_json(back), scenario_to_json(cfg));
  ASSERT_EQ(back.scenario.num_gus(), 15);
  EXPECT_NEAR(back.scenario.gus[3].position.x, cfg.scenario.gus[3].position.x, 1e-9);
  EXPECT_NEAR(back.scenario.channel.interference_w, 1e-12, 1e-24);
  ASSERT_EQ(back.sample_space_bits.size(), 5u);
  EXPECT_NEAR(back.sample_space_bits[0], 2e5, 1e-6);
}

TEST(ScenarioIoTest, UnknownAndMissingKeysAreErrors) {
  ScenarioConfig cfg{generate_scenario(5), testing::default_space().values};
  auto j = nlohmann::json::parse(scenario_to_json(cfg));
  j["hap"]["altitude_km"] = 20;
  try {
    parse_scenario_json(j.dump());
    FAIL() << "unknown key accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
  auto k = nlohmann::json::parse(scenario_to_json(cfg));
  k["channel"].erase("los_a");
  EXPECT_THROW(parse_scenario_json(k.dump()), Error);
  EXPECT_THROW(parse_scenario_json("{not json"), Error);
}

TEST(ScenarioIoTest, ShippedDefaultsMatchBuiltIn) {
  std::ifstream in(std::string(DRCOTO_DATA_DIR) + "/defaults.json");
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(nlohmann::json::parse(ss.str()), nlohmann::json::parse(assumed_defaults_json()));
}

}  // namespace
}  // namespace drcoto
