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
#include <string>

#include "drcoto/error.h"

namespace drcoto {

int SampleSpace::bin_of(double sample) const {
  if (edges.size() < 2 || !(sample >= edges.front()) || !(sample < edges.back())) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), sample);
  return static_cast<int>(it - edges.begin()) - 1;
}

bool SampleSpace::valid() const {
  const std::size_t k = values.size();
  if (k == 0 || edges.size() != k + 1) return false;
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (!(values[i] < values[i + 1])) return false;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i] < edges[i + 1])) return false;
  for (std::size_t i = 0; i < k; ++i)
    if (!(values[i] >= edges[i] && values[i] < edges[i + 1])) return false;
  return true;
}

SampleSpace SampleSpace::with_midpoint_edges(std::vector<double> values_bits) {
  SampleSpace s;
  s.values = std::move(values_bits);
  s.edges.push_back(0.0);
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i)
    s.edges.push_back(0.5 * (s.values[i] + s.values[i + 1]));
  s.edges.push_back(kInf);
  if (!s.valid()) throw Error(ErrorCode::kInvalidInput, "sample space values must be increasing and > 0");
  return s;
}

bool Distribution::valid(double tol) const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) return false;
    sum += p;
  }
  return !probs.empty() && std::abs(sum - 1.0) <= tol;
}

Distribution Distribution::unit(int k, int size) {
  Distribution d;
  d.probs.assign(size, 0.0);
  d.probs[k] = 1.0;
  return d;
}

double mean(const Distribution& dist, const SampleSpace& space) {
  if (dist.size() != space.size())
    throw Error(ErrorCode::kInvalidInput, "distribution size does not match the sample space");
  double m = 0.0;
  for (int k = 0; k < dist.size(); ++k) m += dist.probs[k] * space.values[k];
  return m;
}

Distribution build_reference(const std::vector<double>& samples, const SampleSpace& space) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidInput, "no historical samples");
  std::vector<long> counts(space.size(), 0);
  for (double s : samples) {
    const int k = space.bin_of(s);
    if (k < 0)
      throw Error(ErrorCode::kInvalidInput, "sample " + std::to_string(s) + " outside the bins");
    ++counts[k];
  }
  Distribution d;
  d.probs.resize(space.size());
  const double q = static_cast<double>(samples.size());
  for (int k = 0; k < space.size(); ++k) d.probs[k] = static_cast<double>(counts[k]) / q;
  return d;
}

double l1_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::kInvalidInput, "distribution sizes differ");
  double s = 0.0;
  for (int k = 0; k < p.size(); ++k) s += std::abs(p.probs[k] - q.probs[k]);
  return s;
}

namespace {

Distribution snap(std::vector<double> probs) {
  double sum = 0.0;
  for (double& p : probs) {
    p = std::clamp(p, 0.0, 1.0);
    if (p < 1e-12) p = 0.0;
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return Distribution{std::move(probs)};
}

double objective_of(const std::vector<std::vector<double>>& costs,
                    const std::vector<Distribution>& dists) {
  double s = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i)
    for (std::size_t k = 0; k < costs[i].size(); ++k) s += dists[i].probs[k] * costs[i][k];
  return s;
}

}  // namespace

WorstCase worst_case_distribution(const std::vector<std::vector<double>>& costs,
                                  const AmbiguitySet& amb,
                                  const std::vector<ExpectationRow>& side,
                                  const LpOptions& options) {
  const int I = static_cast<int>(costs.size());
  const int K = amb.space.size();
  if (static_cast<int>(amb.references.size()) != I)
    throw Error(ErrorCode::kInvalidInput, "one reference distribution per GU required");
  if (!(amb.radius >= 0.0)) throw Error(ErrorCode::kInvalidInput, "radius must be >= 0");
  for (int i = 0; i < I; ++i) {
    if (static_cast<int>(costs[i].size()) != K || amb.references[i].size() != K)
      throw Error(ErrorCode::kInvalidInput, "cost or reference size does not match K");
    for (double c : costs[i])
      if (!std::isfinite(c)) throw Error(ErrorCode::kInvalidInput, "non-finite cost");
  }

  // Rows no distribution can violate are dropped.
  std::vector<const ExpectationRow*> kept;
  for (const ExpectationRow& row : side) {
    if (static_cast<int>(row.coef.size()) != I * K)
      throw Error(ErrorCode::kInvalidInput, "side row has wrong length");
    double worst = 0.0;
    for (int i = 0; i < I; ++i)
      worst += *std::max_element(row.coef.begin() + i * K, row.coef.begin() + (i + 1) * K);
    if (worst > row.rhs) kept.push_back(&row);
  }

  WorstCase out;
  out.rows_kept = static_cast<int>(kept.size());
  if (amb.radius == 0.0) {
    out.dists = amb.references;
    for (const ExpectationRow* row : kept) {
      double s = 0.0;
      for (int i = 0; i < I; ++i)
        for (int k = 0; k < K; ++k) s += row->coef[i * K + k] * out.dists[i].probs[k];
      if (s > row->rhs + options.feas_tol * std::max(1.0, std::abs(row->rhs)))
        throw Error(ErrorCode::kInfeasible, "reference distributions violate " + row->tag);
    }
    out.objective = objective_of(costs, out.dists);
    return out;
  }

  // Variables: p_{i,k} then u_{i,k}.
  LpProblem lp;
  lp.sense = Sense::kMaximize;
  const int nv = 2 * I * K;
  lp.objective.assign(nv, 0.0);
  lp.lower.assign(nv, 0.0);
  lp.upper.assign(nv, 1.0);
  for (int i = 0; i < I; ++i)
    for (int k = 0; k < K; ++k) {
      lp.objective[i * K + k] = costs[i][k];
      lp.upper[I * K + i * K + k] = 2.0;
    }
  for (int i = 0; i < I; ++i) {
    std::vector<double> simplex(nv, 0.0), ball(nv, 0.0);
    for (int k = 0; k < K; ++k) {
      const int p = i * K + k, u = I * K + i * K + k;
      simplex[p] = 1.0;
      ball[u] = 1.0;
      std::vector<double> up(nv, 0.0), down(nv, 0.0);
      up[u] = 1.0;
      up[p] = -1.0;
      down[u] = 1.0;
      down[p] = 1.0;
      lp.add_row(std::move(up), Relation::kGreaterEqual, -amb.references[i].probs[k]);
      lp.add_row(std::move(down), Relation::kGreaterEqual, amb.references[i].probs[k]);
    }
    lp.add_row(std::move(simplex), Relation::kEqual, 1.0);
    lp.add_row(std::move(ball), Relation::kLessEqual, amb.radius);
  }
  for (const ExpectationRow* row : kept) {
    std::vector<double> coef(nv, 0.0);
    std::copy(row->coef.begin(), row->coef.end(), coef.begin());
    lp.add_row(std::move(coef), Relation::kLessEqual, row->rhs);
  }
  const LpSolution sol = solve_lp(lp, options);
  if (sol.status == LpStatus::kInfeasible)
    throw Error(ErrorCode::kInfeasible, "side constraints exclude the whole ambiguity set");
  if (sol.status != LpStatus::kOptimal)
    throw Error(ErrorCode::kNumerical,
                std::string("worst-case LP ended with status ") + to_string(sol.status));
  out.dists.resize(I);
  for (int i = 0; i < I; ++i)
    out.dists[i] = snap(std::vector<double>(sol.primal.begin() + i * K,
                                            sol.primal.begin() + (i + 1) * K));
  out.objective = objective_of(costs, out.dists);
  return out;
}

}  // namespace drcoto
