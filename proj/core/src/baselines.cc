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
#include "drcoto/baselines.h"

#include <chrono>
#include <cmath>

#include "drcoto/cost_model.h"

namespace drcoto {

const char* to_string(BaselineMode mode) {
  switch (mode) {
    case BaselineMode::kDO: return "DO";
    case BaselineMode::kSO: return "SO";
    case BaselineMode::kRO: return "RO";
  }
  return "unknown";
}

std::vector<Distribution> baseline_distributions(BaselineMode mode, const AmbiguitySet& amb) {
  const SampleSpace& space = amb.space;
  const int K = space.size();
  if (mode == BaselineMode::kSO) return amb.references;
  std::vector<Distribution> out;
  out.reserve(amb.references.size());
  for (const Distribution& ref : amb.references) {
    if (mode == BaselineMode::kRO) {
      out.push_back(Distribution::unit(K - 1, K));
      continue;
    }
    // Nearest sample value to the reference mean, ties to the smaller value.
    const double m = mean(ref, space);
    int best = 0;
    for (int k = 1; k < K; ++k)
      if (std::abs(space.values[k] - m) < std::abs(space.values[best] - m)) best = k;
    out.push_back(Distribution::unit(best, K));
  }
  return out;
}

SolveReport solve_baseline(BaselineMode mode, const Scenario& s, const AmbiguitySet& amb,
                           const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.method = to_string(mode);
  rep.worst_dists = baseline_distributions(mode, amb);
  P2Result p2 = solve_p2(rep.worst_dists, amb, s, options);
  rep.objective = p2.value;
  rep.decisions = std::move(p2.dec);
  rep.trajectories = std::move(p2.plan);
  for (BendersStep st : p2.steps) {
    st.outer = 1;
    rep.ub_trace.push_back(st.ub);
    rep.lb_trace.push_back(st.lb);
    rep.steps.push_back(st);
  }
  rep.outer_trace = {p2.value};
  rep.outer_iters = 1;
  rep.benders_iters = static_cast<int>(p2.steps.size());
  rep.sca_iters = p2.sca_iters;
  rep.converged = p2.converged;
  rep.feasible = p2.feasible;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace drcoto
