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
#include "drcoto/uncertainty.h"

#include <algorithm>
#include <cmath>

#include "drcoto/error.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace drcoto {
namespace {

using testing::space_mbit;

TEST(SampleSpaceTest, MidpointEdges) {
  const SampleSpace s = space_mbit({0.2, 0.5, 1.0, 1.5, 2.0});
  ASSERT_TRUE(s.valid());
  ASSERT_EQ(s.edges.size(), 6u);
  EXPECT_EQ(s.edges[0], 0.0);
  EXPECT_NEAR(s.edges[1], 3.5e5, 1e-9);
  EXPECT_TRUE(std::isinf(s.edges[5]));
  EXPECT_EQ(s.bin_of(3.49e5), 0);
  EXPECT_EQ(s.bin_of(3.5e5), 1);
  EXPECT_EQ(s.bin_of(9e9), 4);
  EXPECT_EQ(s.bin_of(-1.0), -1);
}

TEST(ReferenceTest, CountsBins) {
  const SampleSpace s = space_mbit({0.2, 0.5, 1.0, 1.5, 2.0});
  const Distribution d = build_reference({2e5, 3e5, 1e6, 2e6}, s);
  const std::vector<double> want = {0.5, 0.0, 0.25, 0.0, 0.25};
  for (int k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(d.probs[k], want[k]);
}

TEST(ReferenceTest, DegenerateAndOrderInvariant) {
  const SampleSpace s = space_mbit({0.2, 0.5, 1.0, 1.5, 2.0});
  EXPECT_EQ(build_reference({1.1e6, 0.9e6, 1.2e6}, s), Distribution::unit(2, 5));
  std::vector<double> v = {2e5, 7e5, 1.9e6, 1.3e6, 4e5, 2.4e6, 1e6};
  const Distribution a = build_reference(v, s);
  std::reverse(v.begin(), v.end());
  std::rotate(v.begin(), v.begin() + 3, v.end());
  EXPECT_EQ(build_reference(v, s), a);
}

TEST(ReferenceTest, RejectsBadSamples) {
  const SampleSpace s = space_mbit({0.2, 0.5});
  EXPECT_THROW(build_reference({-5.0}, s), Error);
  EXPECT_THROW(build_reference({}, s), Error);
}

TEST(DistanceTest, L1) {
  EXPECT_EQ(l1_distance(Distribution{{0.2, 0.8}}, Distribution{{0.2, 0.8}}), 0.0);
  EXPECT_DOUBLE_EQ(l1_distance(Distribution::unit(0, 3), Distribution::unit(2, 3)), 2.0);
  EXPECT_NEAR(l1_distance(Distribution{{0.5, 0.5}}, Distribution{{0.3, 0.7}}), 0.4, 1e-15);
  EXPECT_THROW(l1_distance(Distribution{{1.0}}, Distribution{{0.5, 0.5}}), Error);
}

AmbiguitySet one_gu(std::vector<double> p0, double eps) {
  AmbiguitySet a;
  std::vector<double> mbit;
  for (std::size_t k = 0; k < p0.size(); ++k) mbit.push_back(0.5 + k);
  a.space = space_mbit(mbit);
  a.references = {Distribution{std::move(p0)}};
  a.radius = eps;
  return a;
}

TEST(WorstCaseTest, TwoPointExample) {
  const AmbiguitySet a = one_gu({0.5, 0.5}, 0.3);
  const WorstCase w = worst_case_distribution({{1.0, 2.0}}, a, {});
  EXPECT_NEAR(w.dists[0].probs[0], 0.35, 1e-9);
  EXPECT_NEAR(w.dists[0].probs[1], 0.65, 1e-9);
  EXPECT_NEAR(w.objective, 1.65, 1e-9);
  const auto grid = testing::grid_worst_case({{1.0, 2.0}}, a, {}, 0.001);
  ASSERT_TRUE(grid);
  EXPECT_NEAR(*grid, 1.65, 1e-9);
}

TEST(WorstCaseTest, ZeroRadiusReturnsReferences) {
  const AmbiguitySet a = one_gu({0.2, 0.3, 0.5}, 0.0);
  const WorstCase w = worst_case_distribution({{4.0, 1.0, 2.0}}, a, {});
  EXPECT_EQ(w.dists[0], a.references[0]);
  EXPECT_NEAR(w.objective, 0.8 + 0.3 + 1.0, 1e-12);
}

TEST(WorstCaseTest, FullRadiusIsUnitMassOnMaxCost) {
  AmbiguitySet a = one_gu({0.2, 0.3, 0.5}, 2.0);
  a.references.push_back(Distribution{{0.6, 0.2, 0.2}});
  const WorstCase w = worst_case_distribution({{4.0, 1.0, 2.0}, {0.0, 1.0, 3.0}}, a, {});
  EXPECT_EQ(w.dists[0], Distribution::unit(0, 3));
  EXPECT_EQ(w.dists[1], Distribution::unit(2, 3));
  EXPECT_NEAR(w.objective, 7.0, 1e-12);
}

TEST(WorstCaseTest, SideRowsBindAndInfeasibleIsReported) {
  AmbiguitySet a = one_gu({0.5, 0.5}, 1.0);
  // p_1 <= 0.7
  ExpectationRow row{{0.0, 1.0}, 0.7, "cap"};
  const WorstCase w = worst_case_distribution({{1.0, 2.0}}, a, {row});
  EXPECT_NEAR(w.dists[0].probs[1], 0.7, 1e-9);
  EXPECT_NEAR(w.objective, 1.7, 1e-9);

  a.radius = 0.2;
  ExpectationRow tight{{0.0, 1.0}, 0.3, "tight"};
  try {
    worst_case_distribution({{1.0, 2.0}}, a, {tight});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(WorstCaseTest, PropertiesOnRandomInstances) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const int I = 1 + t % 3, K = 2 + t % 4;
    AmbiguitySet a;
    std::vector<double> mbit;
    for (int k = 0; k < K; ++k) mbit.push_back(0.1 * (k + 1));
    a.space = space_mbit(mbit);
    std::vector<std::vector<double>> costs(I);
    for (int i = 0; i < I; ++i) {
      Distribution d;
      double sum = 0.0;
      for (int k = 0; k < K; ++k) {
        d.probs.push_back(rng.uniform());
        sum += d.probs.back();
        costs[i].push_back(rng.uniform(0.0, 5.0));
      }
      for (double& p : d.probs) p /= sum;
      a.references.push_back(d);
    }
    double ref_obj = 0.0;
    for (int i = 0; i < I; ++i)
      for (int k = 0; k < K; ++k) ref_obj += costs[i][k] * a.references[i].probs[k];
    double prev = -kInf;
    for (double eps : {0.0, 0.1, 0.2, 0.3, 1.0, 2.0}) {
      a.radius = eps;
      const WorstCase w = worst_case_distribution(costs, a, {});
      for (int i = 0; i < I; ++i) {
        EXPECT_TRUE(w.dists[i].valid());
        EXPECT_LE(l1_distance(w.dists[i], a.references[i]), eps + 1e-7);
      }
      EXPECT_GE(w.objective, ref_obj - 1e-9);
      EXPECT_GE(w.objective, prev - 1e-9);
      prev = w.objective;
    }
  }
}

}  // namespace
}  // namespace drcoto
