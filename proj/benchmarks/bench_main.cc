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
#include <benchmark/benchmark.h>

#include "drcoto/benders.h"
#include "drcoto/cost_model.h"
#include "drcoto/harness.h"
#include "drcoto/lp.h"
#include "drcoto/rng.h"
#include "drcoto/subproblem.h"
#include "drcoto/units.h"

namespace {

using namespace drcoto;

LpProblem dense_lp(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  LpProblem p;
  p.sense = Sense::kMaximize;
  for (int j = 0; j < n; ++j) p.add_variable(rng.uniform(0.5, 2.0), 0.0, 10.0);
  for (int r = 0; r < m; ++r) {
    std::vector<double> c(n);
    for (double& v : c) v = rng.uniform(0.0, 1.0);
    p.add_row(std::move(c), Relation::kLessEqual, rng.uniform(5.0, 20.0));
  }
  return p;
}

void BM_DenseLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LpProblem p = dense_lp(n, n / 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(p).objective);
}
BENCHMARK(BM_DenseLp)->Arg(20)->Arg(80)->Arg(200);

struct Instance {
  Scenario s;
  SampleSpace space;
  AmbiguitySet amb;
  std::vector<double> bits;
  OffloadDecision dec;
};

Instance instance(int gus, int slots) {
  ScenarioOverrides ov;
  ov.num_gus = gus;
  ov.num_slots = slots;
  Instance in;
  in.s = generate_scenario(1, ov);
  std::vector<double> b;
  for (double v : default_sample_space_mbit()) b.push_back(units::mbit_to_bits(v));
  in.space = SampleSpace::with_midpoint_edges(b);
  in.amb = build_ambiguity(generate_history(1, in.s, in.space, 200), in.space, 0.3);
  in.bits = expected_bits(in.amb.references, in.space, in.s);
  in.dec = initial_feasible(in.s, in.amb).dec;
  for (int n = 0; n < slots; ++n)
    for (int i = 0; i < gus && i < 3 * in.s.num_uavs(); ++i)
      if (in.dec.collector(i, n) < 0) in.dec.compute_on_uav(i, i % in.s.num_uavs(), n);
  return in;
}

void BM_TrajectorySubproblem(benchmark::State& state) {
  const Instance in = instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const TrajectoryPlan line = straight_line_plan(in.s);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_sp(in.dec, in.bits, line, in.s).objective.value);
}
BENCHMARK(BM_TrajectorySubproblem)->Args({6, 5})->Args({15, 15})->Unit(benchmark::kMillisecond);

void BM_WorstCase(benchmark::State& state) {
  const Instance in = instance(static_cast<int>(state.range(0)), 15);
  const TrajectoryPlan line = straight_line_plan(in.s);
  const WorstCaseInputs w = worst_case_inputs(in.dec, line, in.s, in.space);
  for (auto _ : state)
    benchmark::DoNotOptimize(worst_case_distribution(w.costs, in.amb, w.side).objective);
}
BENCHMARK(BM_WorstCase)->Arg(6)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Master(benchmark::State& state) {
  const Instance in = instance(static_cast<int>(state.range(0)), 5);
  const OptimisticModel m = optimistic_model(in.s, in.bits);
  const std::vector<BendersCut> cuts = {base_cut(m)};
  MilpOptions o;
  o.node_limit = 100;
  for (auto _ : state) benchmark::DoNotOptimize(solve_master(cuts, m, in.s, o).value);
}
BENCHMARK(BM_Master)->Arg(6)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
