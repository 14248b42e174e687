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

#include <vector>

#include "drcoto/lp.h"

namespace drcoto {

struct MilpProblem {
  LpProblem base;
  std::vector<bool> binary;  // per variable
};

enum class MilpStatus { kOptimal, kInfeasible, kUnbounded, kNodeLimit };

const char* to_string(MilpStatus status);

struct MilpOptions {
  int node_limit = 20000;
  double int_tol = 1e-6;
  int warm_cache = 16;  // parent tableaus kept for warm-starting children
  // Optional known assignment; used as the first incumbent when it satisfies
  // every row, bound and integrality requirement.
  std::vector<double> start;
  LpOptions lp;
};

struct BoundSample {
  int node = 0;
  double incumbent = kInf;  // in the problem's own sense
  double bound = -kInf;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  std::vector<double> assignment;
  double objective = 0.0;
  double bound = 0.0;  // proven best bound, problem sense
  int nodes_explored = 0;
  bool node_limit_reached = false;
  std::vector<BoundSample> trace;
};

// Best-bound branch-and-bound; branches on the most fractional binary, ties to
// the lowest index. On node limit returns the incumbent (if any) with status
// kNodeLimit.
MilpSolution solve_milp(const MilpProblem& problem, const MilpOptions& options = {});

}  // namespace drcoto
