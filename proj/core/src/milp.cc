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
#include "drcoto/milp.h"

#include <algorithm>
#include <cmath>
#include <list>
#include <memory>
#include <queue>
#include <utility>

#include "drcoto/error.h"

namespace drcoto {

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kUnbounded: return "unbounded";
    case MilpStatus::kNodeLimit: return "node_limit";
  }
  return "unknown";
}

namespace {

struct Node {
  int id = 0;
  int parent = -1;
  double bound = -kInf;  // minimization sense
  std::vector<std::pair<int, double>> fixings;
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

// Small LRU of solved parent tableaus keyed by node id.
class WarmCache {
 public:
  explicit WarmCache(int capacity) : capacity_(capacity) {}

  const DenseSimplex* find(int id) const {
    for (const auto& e : entries_)
      if (e.first == id) return &e.second;
    return nullptr;
  }
  void put(int id, const DenseSimplex& s) {
    if (capacity_ <= 0) return;
    entries_.emplace_front(id, s);
    while (static_cast<int>(entries_.size()) > capacity_) entries_.pop_back();
  }

 private:
  int capacity_;
  std::list<std::pair<int, DenseSimplex>> entries_;
};

bool start_is_feasible(const LpProblem& lp, const MilpProblem& problem,
                       const MilpOptions& options) {
  const std::vector<double>& x = options.start;
  const double tol = options.lp.feas_tol;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol) return false;
    if (problem.binary[j] && std::abs(x[j] - std::round(x[j])) > options.int_tol) return false;
  }
  for (const LpRow& row : lp.rows) {
    double a = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) a += row.coef[j] * x[j];
    const double scale = tol * std::max(1.0, std::abs(row.rhs));
    if (row.relation != Relation::kGreaterEqual && a > row.rhs + scale) return false;
    if (row.relation != Relation::kLessEqual && a < row.rhs - scale) return false;
  }
  return true;
}

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const MilpOptions& options) {
  const LpProblem& base = problem.base;
  base.validate();
  const int n = base.num_vars();
  if (static_cast<int>(problem.binary.size()) != n)
    throw Error(ErrorCode::kInvalidInput, "binary mask does not match the variable count");
  for (int j = 0; j < n; ++j)
    if (problem.binary[j] && (base.lower[j] < 0.0 || base.upper[j] > 1.0))
      throw Error(ErrorCode::kInvalidInput, "binary variable with bounds outside [0, 1]");

  LpProblem minp = base;
  const double sign = base.sense == Sense::kMaximize ? -1.0 : 1.0;
  minp.sense = Sense::kMinimize;
  for (double& c : minp.objective) c *= sign;
  auto eval = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += minp.objective[j] * x[j];
    return s;
  };

  MilpSolution out;
  const DenseSimplex root_solver(minp, options.lp);
  WarmCache cache(options.warm_cache);

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> open;
  auto root = std::make_shared<Node>();
  open.push(root);
  int next_id = 1;
  double incumbent = kInf;
  std::vector<double> best;
  bool unbounded = false;
  if (static_cast<int>(options.start.size()) == n && start_is_feasible(minp, problem, options)) {
    best = options.start;
    incumbent = eval(best);
  }

  while (!open.empty()) {
    if (out.nodes_explored >= options.node_limit) {
      out.node_limit_reached = true;
      break;
    }
    std::shared_ptr<Node> node = open.top();
    open.pop();
    if (node->bound >= incumbent - 1e-9 * std::max(1.0, std::abs(incumbent))) continue;

    DenseSimplex solver = root_solver;
    if (const DenseSimplex* warm = cache.find(node->parent)) {
      solver = *warm;
      const auto& f = node->fixings.back();
      solver.set_bounds(f.first, f.second, f.second);
    } else {
      for (const auto& f : node->fixings) solver.set_bounds(f.first, f.second, f.second);
    }
    const LpSolution lp = solver.solve();
    ++out.nodes_explored;
    const double global = std::min(node->bound, incumbent);

    if (lp.status == LpStatus::kUnbounded) {
      unbounded = true;
      break;
    }
    if (lp.status == LpStatus::kIterationLimit)
      throw Error(ErrorCode::kNumerical, "LP iteration limit inside branch-and-bound");
    if (lp.status == LpStatus::kInfeasible) {
      out.trace.push_back({out.nodes_explored, sign * incumbent, sign * global});
      continue;
    }
    const double value = lp.objective;  // minp is already in minimization sense
    if (value >= incumbent - 1e-9 * std::max(1.0, std::abs(incumbent))) {
      out.trace.push_back({out.nodes_explored, sign * incumbent, sign * global});
      continue;
    }

    int branch = -1;
    double best_frac = options.int_tol;
    for (int j = 0; j < n; ++j) {
      if (!problem.binary[j]) continue;
      const double v = lp.primal[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      std::vector<double> x = lp.primal;
      for (int j = 0; j < n; ++j)
        if (problem.binary[j]) x[j] = std::round(x[j]);
      const double obj = eval(x);
      if (obj < incumbent) {
        incumbent = obj;
        best = std::move(x);
      }
      out.trace.push_back({out.nodes_explored, sign * incumbent, sign * std::min(global, incumbent)});
      continue;
    }

    cache.put(node->id, solver);
    const double v = lp.primal[branch];
    const double first = v < 0.5 ? 0.0 : 1.0;
    for (double fix : {first, 1.0 - first}) {
      auto child = std::make_shared<Node>();
      child->id = next_id++;
      child->parent = node->id;
      child->bound = value;
      child->fixings = node->fixings;
      child->fixings.emplace_back(branch, fix);
      open.push(child);
    }
    out.trace.push_back({out.nodes_explored, sign * incumbent, sign * global});
  }

  if (unbounded) {
    out.status = MilpStatus::kUnbounded;
    return out;
  }
  double bound = incumbent;
  if (!open.empty()) bound = std::min(bound, open.top()->bound);
  out.bound = sign * bound;
  if (best.empty()) {
    out.status = out.node_limit_reached ? MilpStatus::kNodeLimit : MilpStatus::kInfeasible;
    return out;
  }
  out.assignment = std::move(best);
  out.objective = sign * incumbent;
  out.status = out.node_limit_reached ? MilpStatus::kNodeLimit : MilpStatus::kOptimal;
  return out;
}

}  // namespace drcoto
