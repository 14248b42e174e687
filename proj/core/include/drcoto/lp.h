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

#include <limits>
#include <string>
#include <vector>

namespace drcoto {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpRow {
  std::vector<double> coef;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct LpProblem {
  Sense sense = Sense::kMinimize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Returns the new variable's index. Existing rows get a zero coefficient.
  int add_variable(double cost, double lo = 0.0, double hi = kInf);
  int add_row(std::vector<double> coef, Relation relation, double rhs);

  // Throws Error(kInvalidInput) on ragged rows, NaNs or lower > upper.
  void validate() const;
};

struct LpOptions {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  int max_iterations = 0;  // 0 selects 50 * (rows + vars) + 1000
  int bland_after = 50;    // consecutive degenerate pivots before Bland's rule
  int refactor_every = 200;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  std::vector<double> duals;          // d objective / d rhs, one per row
  std::vector<double> reduced_costs;  // per structural variable
  double objective = 0.0;
  int iterations = 0;
};

// Bounded-variable primal simplex on a dense condensed tableau. Row
// activities are carried as bounded logical variables, so a row is simply a
// bound on its activity. The state can be copied and re-solved after bound
// changes, which is how branch-and-bound warm starts its children.
class DenseSimplex {
 public:
  DenseSimplex(const LpProblem& problem, const LpOptions& options = {});

  void set_bounds(int var, double lo, double hi);
  double lower(int var) const { return lo_[var]; }
  double upper(int var) const { return hi_[var]; }
  LpSolution solve();

 private:
  enum class Phase { kOne, kTwo };

  double& tab(int r, int c) { return t_[static_cast<std::size_t>(r) * n_ + c]; }
  double tab(int r, int c) const { return t_[static_cast<std::size_t>(r) * n_ + c]; }
  void compute_basic_values();
  double infeasibility() const;
  void compute_reduced_costs(Phase phase);
  int choose_entering(bool bland, int* direction) const;
  int ratio_test(int entering, int direction, Phase phase, bool bland, double* step,
                 bool* to_upper) const;
  void pivot(int row, int col);
  void refactor();
  double residual() const;
  LpStatus run(Phase phase, int* iterations);

  int m_ = 0, n_ = 0;  // rows, nonbasic count (== structural count)
  LpOptions opt_;
  Sense sense_ = Sense::kMinimize;
  std::vector<double> a_;     // original m x n matrix
  std::vector<double> cost_;  // minimization costs over n + m variables
  std::vector<double> lo_, hi_;
  std::vector<double> t_;     // basic = T * nonbasic
  std::vector<int> basic_;    // variable in basic row r
  std::vector<int> nonbasic_;  // variable in nonbasic column c
  std::vector<double> xn_;    // nonbasic values
  std::vector<double> xb_;    // basic values
  std::vector<double> d_;     // reduced costs of nonbasic columns
  int since_refactor_ = 0;
  int max_iter_ = 0;
};

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

// Plain-text tabular dump for offline inspection.
std::string dump_lp(const LpProblem& problem);

}  // namespace drcoto
