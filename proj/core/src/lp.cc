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
#include "drcoto/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "drcoto/error.h"

namespace drcoto {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

int LpProblem::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  for (LpRow& row : rows) row.coef.push_back(0.0);
  return num_vars() - 1;
}

int LpProblem::add_row(std::vector<double> coef, Relation relation, double rhs) {
  coef.resize(objective.size(), 0.0);
  rows.push_back({std::move(coef), relation, rhs});
  return num_rows() - 1;
}

void LpProblem::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n)
    throw Error(ErrorCode::kInvalidInput, "bound vectors do not match the variable count");
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(objective[j]) || std::isnan(lower[j]) || std::isnan(upper[j]))
      throw Error(ErrorCode::kInvalidInput, "NaN in objective or bounds");
    if (lower[j] > upper[j])
      throw Error(ErrorCode::kInvalidInput, "lower > upper for variable " + std::to_string(j));
    if (lower[j] == kInf || upper[j] == -kInf)
      throw Error(ErrorCode::kInvalidInput, "empty bound interval for variable " + std::to_string(j));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coef.size() != n)
      throw Error(ErrorCode::kInvalidInput, "row " + std::to_string(i) + " has wrong length");
    if (!std::isfinite(rows[i].rhs))
      throw Error(ErrorCode::kInvalidInput, "row " + std::to_string(i) + " rhs not finite");
    for (double a : rows[i].coef)
      if (!std::isfinite(a))
        throw Error(ErrorCode::kInvalidInput, "row " + std::to_string(i) + " has non-finite entry");
  }
}

DenseSimplex::DenseSimplex(const LpProblem& problem, const LpOptions& options)
    : m_(problem.num_rows()), n_(problem.num_vars()), opt_(options), sense_(problem.sense) {
  problem.validate();
  const int total = n_ + m_;
  a_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
  for (int i = 0; i < m_; ++i)
    std::copy(problem.rows[i].coef.begin(), problem.rows[i].coef.end(),
              a_.begin() + static_cast<std::ptrdiff_t>(i) * n_);
  cost_.assign(total, 0.0);
  lo_.resize(total);
  hi_.resize(total);
  const double sign = sense_ == Sense::kMaximize ? -1.0 : 1.0;
  for (int j = 0; j < n_; ++j) {
    cost_[j] = sign * problem.objective[j];
    lo_[j] = problem.lower[j];
    hi_[j] = problem.upper[j];
  }
  for (int i = 0; i < m_; ++i) {
    const LpRow& row = problem.rows[i];
    lo_[n_ + i] = row.relation == Relation::kLessEqual ? -kInf : row.rhs;
    hi_[n_ + i] = row.relation == Relation::kGreaterEqual ? kInf : row.rhs;
  }
  t_ = a_;
  basic_.resize(m_);
  nonbasic_.resize(n_);
  for (int i = 0; i < m_; ++i) basic_[i] = n_ + i;
  for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
  xn_.resize(n_);
  for (int j = 0; j < n_; ++j) xn_[j] = std::clamp(0.0, lo_[j], hi_[j]);
  xb_.assign(m_, 0.0);
  d_.assign(n_, 0.0);
  max_iter_ = opt_.max_iterations > 0 ? opt_.max_iterations : 50 * (m_ + n_) + 1000;
}

void DenseSimplex::set_bounds(int var, double lo, double hi) {
  if (lo > hi) throw Error(ErrorCode::kInvalidInput, "lower > upper in set_bounds");
  lo_[var] = lo;
  hi_[var] = hi;
  for (int c = 0; c < n_; ++c)
    if (nonbasic_[c] == var) xn_[c] = std::clamp(xn_[c], lo, hi);
}

void DenseSimplex::compute_basic_values() {
  for (int r = 0; r < m_; ++r) {
    const double* row = &t_[static_cast<std::size_t>(r) * n_];
    double s = 0.0;
    for (int c = 0; c < n_; ++c) s += row[c] * xn_[c];
    xb_[r] = s;
  }
}

double DenseSimplex::infeasibility() const {
  double worst = 0.0;
  for (int r = 0; r < m_; ++r) {
    const int v = basic_[r];
    worst = std::max({worst, lo_[v] - xb_[r], xb_[r] - hi_[v]});
  }
  return worst;
}

void DenseSimplex::compute_reduced_costs(Phase phase) {
  for (int c = 0; c < n_; ++c) d_[c] = phase == Phase::kTwo ? cost_[nonbasic_[c]] : 0.0;
  for (int r = 0; r < m_; ++r) {
    double w = 0.0;
    const int v = basic_[r];
    if (phase == Phase::kTwo) {
      w = cost_[v];
    } else if (xb_[r] < lo_[v] - opt_.feas_tol) {
      w = -1.0;
    } else if (xb_[r] > hi_[v] + opt_.feas_tol) {
      w = 1.0;
    }
    if (w == 0.0) continue;
    const double* row = &t_[static_cast<std::size_t>(r) * n_];
    for (int c = 0; c < n_; ++c) d_[c] += w * row[c];
  }
}

int DenseSimplex::choose_entering(bool bland, int* direction) const {
  int best = -1;
  double best_score = 0.0;
  int best_var = 0;
  for (int c = 0; c < n_; ++c) {
    const int v = nonbasic_[c];
    if (lo_[v] == hi_[v]) continue;
    int dir = 0;
    if (d_[c] < -opt_.opt_tol && xn_[c] < hi_[v]) dir = 1;
    else if (d_[c] > opt_.opt_tol && xn_[c] > lo_[v]) dir = -1;
    if (dir == 0) continue;
    const double score = std::abs(d_[c]);
    if (bland) {
      if (best < 0 || v < best_var) {
        best = c;
        best_var = v;
        *direction = dir;
      }
    } else if (score > best_score) {
      best = c;
      best_score = score;
      *direction = dir;
    }
  }
  return best;
}

// Returns the leaving row, -1 for a bound flip of the entering variable, or
// -2 when the step is unbounded.
int DenseSimplex::ratio_test(int entering, int direction, Phase phase, bool bland, double* step,
                             bool* to_upper) const {
  const double tol = opt_.feas_tol;
  struct Candidate {
    int row;
    double dist;
    double alpha;
    bool upper;
  };
  std::vector<Candidate> cands;
  for (int r = 0; r < m_; ++r) {
    const double alpha = tab(r, entering) * direction;
    if (std::abs(alpha) <= opt_.pivot_tol) continue;
    const int v = basic_[r];
    const double x = xb_[r];
    bool below = false, above = false;
    if (phase == Phase::kOne) {
      below = x < lo_[v] - tol;
      above = x > hi_[v] + tol;
    }
    if (alpha > 0.0) {
      if (above) continue;
      const double bound = below ? lo_[v] : hi_[v];
      if (bound == kInf) continue;
      cands.push_back({r, bound - x, alpha, !below});
    } else {
      if (below) continue;
      const double bound = above ? hi_[v] : lo_[v];
      if (bound == -kInf) continue;
      cands.push_back({r, x - bound, -alpha, above});
    }
  }

  const int ev = nonbasic_[entering];
  const double range = direction > 0 ? hi_[ev] - xn_[entering] : xn_[entering] - lo_[ev];

  int chosen = -1;
  double t = kInf;
  if (bland) {
    int chosen_var = 0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const double ratio = std::max(cands[k].dist, 0.0) / cands[k].alpha;
      const int v = basic_[cands[k].row];
      if (chosen < 0 || ratio < t - 1e-12 || (ratio <= t + 1e-12 && v < chosen_var)) {
        chosen = static_cast<int>(k);
        chosen_var = v;
        t = std::min(t, ratio);
      }
    }
    if (chosen >= 0) t = std::max(cands[chosen].dist, 0.0) / cands[chosen].alpha;
  } else {
    double t_max = kInf;
    for (const Candidate& c : cands) t_max = std::min(t_max, (std::max(c.dist, 0.0) + tol) / c.alpha);
    double best_alpha = 0.0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const double ratio = std::max(cands[k].dist, 0.0) / cands[k].alpha;
      if (ratio <= t_max && cands[k].alpha > best_alpha) {
        best_alpha = cands[k].alpha;
        chosen = static_cast<int>(k);
      }
    }
    if (chosen >= 0) t = std::max(cands[chosen].dist, 0.0) / cands[chosen].alpha;
  }

  if (range <= t) {
    if (range == kInf) {
      *step = kInf;
      return -2;
    }
    *step = range;
    return -1;
  }
  if (chosen < 0) {
    *step = kInf;
    return -2;
  }
  *step = t;
  *to_upper = cands[chosen].upper;
  return cands[chosen].row;
}

void DenseSimplex::pivot(int row, int col) {
  double* pr = &t_[static_cast<std::size_t>(row) * n_];
  const double p = pr[col];
  std::vector<int> nz;
  nz.reserve(n_);
  for (int k = 0; k < n_; ++k) {
    if (k == col) continue;
    if (pr[k] != 0.0) {
      pr[k] = -pr[k] / p;
      nz.push_back(k);
    }
  }
  pr[col] = 1.0 / p;
  for (int r = 0; r < m_; ++r) {
    if (r == row) continue;
    double* ri = &t_[static_cast<std::size_t>(r) * n_];
    const double f = ri[col];
    if (f == 0.0) continue;
    for (int k : nz) ri[k] += f * pr[k];
    ri[col] = f * pr[col];
  }
  std::swap(basic_[row], nonbasic_[col]);
  ++since_refactor_;
}

void DenseSimplex::refactor() {
  since_refactor_ = 0;
  // Columns of [A | -I] for basic (left block) and nonbasic (right block).
  const int w = m_ + n_;
  std::vector<double> aug(static_cast<std::size_t>(m_) * w, 0.0);
  auto column = [&](int var, int i) {
    if (var < n_) return a_[static_cast<std::size_t>(i) * n_ + var];
    return var - n_ == i ? -1.0 : 0.0;
  };
  for (int i = 0; i < m_; ++i) {
    double* row = &aug[static_cast<std::size_t>(i) * w];
    for (int r = 0; r < m_; ++r) row[r] = column(basic_[r], i);
    for (int c = 0; c < n_; ++c) row[m_ + c] = column(nonbasic_[c], i);
  }
  bool singular = false;
  for (int k = 0; k < m_ && !singular; ++k) {
    int piv = k;
    for (int i = k + 1; i < m_; ++i)
      if (std::abs(aug[static_cast<std::size_t>(i) * w + k]) >
          std::abs(aug[static_cast<std::size_t>(piv) * w + k]))
        piv = i;
    if (std::abs(aug[static_cast<std::size_t>(piv) * w + k]) < 1e-11) {
      singular = true;
      break;
    }
    if (piv != k)
      std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(k) * w,
                       aug.begin() + static_cast<std::ptrdiff_t>(k + 1) * w,
                       aug.begin() + static_cast<std::ptrdiff_t>(piv) * w);
    double* rk = &aug[static_cast<std::size_t>(k) * w];
    const double inv = 1.0 / rk[k];
    for (int c = k; c < w; ++c) rk[c] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == k) continue;
      double* ri = &aug[static_cast<std::size_t>(i) * w];
      const double f = ri[k];
      if (f == 0.0) continue;
      for (int c = k; c < w; ++c) ri[c] -= f * rk[c];
    }
  }
  if (singular) {
    // Fall back to the all-logical basis, always nonsingular.
    std::vector<double> values(n_ + m_, 0.0);
    for (int c = 0; c < n_; ++c) values[nonbasic_[c]] = xn_[c];
    for (int r = 0; r < m_; ++r) values[basic_[r]] = xb_[r];
    t_ = a_;
    for (int i = 0; i < m_; ++i) basic_[i] = n_ + i;
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      xn_[j] = std::clamp(values[j], lo_[j], hi_[j]);
    }
    return;
  }
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < n_; ++c)
      tab(r, c) = -aug[static_cast<std::size_t>(r) * w + m_ + c];
}

double DenseSimplex::residual() const {
  std::vector<double> values(n_ + m_, 0.0);
  for (int c = 0; c < n_; ++c) values[nonbasic_[c]] = xn_[c];
  for (int r = 0; r < m_; ++r) values[basic_[r]] = xb_[r];
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double* row = &a_[static_cast<std::size_t>(i) * n_];
    double s = 0.0, scale = 1.0;
    for (int j = 0; j < n_; ++j) {
      s += row[j] * values[j];
      scale = std::max(scale, std::abs(row[j] * values[j]));
    }
    worst = std::max(worst, std::abs(s - values[n_ + i]) / scale);
  }
  return worst;
}

LpStatus DenseSimplex::run(Phase phase, int* iterations) {
  int degenerate = 0;
  while (true) {
    if (phase == Phase::kOne && infeasibility() <= opt_.feas_tol) return LpStatus::kOptimal;
    if (*iterations >= max_iter_) return LpStatus::kIterationLimit;
    if (since_refactor_ >= opt_.refactor_every) {
      refactor();
      compute_basic_values();
    }
    compute_reduced_costs(phase);
    const bool bland = degenerate >= opt_.bland_after;
    int dir = 0;
    const int c = choose_entering(bland, &dir);
    if (c < 0) return LpStatus::kOptimal;
    double step = 0.0;
    bool to_upper = false;
    const int r = ratio_test(c, dir, phase, bland, &step, &to_upper);
    ++*iterations;
    if (r == -2) {
      if (phase == Phase::kTwo) return LpStatus::kUnbounded;
      return LpStatus::kIterationLimit;
    }
    degenerate = step <= 1e-12 ? degenerate + 1 : 0;
    const double delta = dir * step;
    if (delta != 0.0)
      for (int k = 0; k < m_; ++k) xb_[k] += delta * t_[static_cast<std::size_t>(k) * n_ + c];
    if (r == -1) {
      const int v = nonbasic_[c];
      xn_[c] = dir > 0 ? hi_[v] : lo_[v];
    } else {
      const int leaving = basic_[r];
      const double entering = xn_[c] + delta;
      pivot(r, c);
      xb_[r] = entering;
      xn_[c] = to_upper ? hi_[leaving] : lo_[leaving];
    }
  }
}

LpSolution DenseSimplex::solve() {
  LpSolution sol;
  int iterations = 0;
  LpStatus status = LpStatus::kOptimal;
  compute_basic_values();
  for (int attempt = 0; attempt < 3; ++attempt) {
    status = run(Phase::kOne, &iterations);
    if (status == LpStatus::kOptimal && infeasibility() > opt_.feas_tol)
      status = LpStatus::kInfeasible;
    if (status == LpStatus::kOptimal) status = run(Phase::kTwo, &iterations);
    if (residual() <= 1e-9 && (status != LpStatus::kOptimal || infeasibility() <= opt_.feas_tol))
      break;
    refactor();
    compute_basic_values();
  }

  std::vector<double> values(n_ + m_, 0.0);
  for (int c = 0; c < n_; ++c) values[nonbasic_[c]] = xn_[c];
  for (int r = 0; r < m_; ++r) values[basic_[r]] = xb_[r];
  compute_reduced_costs(Phase::kTwo);
  std::vector<double> dv(n_ + m_, 0.0);
  for (int c = 0; c < n_; ++c) dv[nonbasic_[c]] = d_[c];

  const double sign = sense_ == Sense::kMaximize ? -1.0 : 1.0;
  sol.status = status;
  sol.iterations = iterations;
  sol.primal.assign(values.begin(), values.begin() + n_);
  sol.reduced_costs.resize(n_);
  for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = sign * dv[j];
  sol.duals.resize(m_);
  for (int i = 0; i < m_; ++i) sol.duals[i] = sign * dv[n_ + i];
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * values[j];
  sol.objective = sign * obj;
  return sol;
}

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  DenseSimplex simplex(problem, options);
  return simplex.solve();
}

std::string dump_lp(const LpProblem& p) {
  std::ostringstream os;
  os.precision(17);
  os << (p.sense == Sense::kMinimize ? "min" : "max");
  for (double c : p.objective) os << ' ' << c;
  os << '\n';
  for (int i = 0; i < p.num_rows(); ++i) {
    os << 'r' << i;
    for (double a : p.rows[i].coef) os << ' ' << a;
    const Relation rel = p.rows[i].relation;
    os << (rel == Relation::kLessEqual ? " <= " : rel == Relation::kEqual ? " = " : " >= ")
       << p.rows[i].rhs << '\n';
  }
  os << "lower";
  for (double l : p.lower) os << ' ' << l;
  os << "\nupper";
  for (double u : p.upper) os << ' ' << u;
  os << '\n';
  return os.str();
}

}  // namespace drcoto
