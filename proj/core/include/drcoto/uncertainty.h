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

#include <string>
#include <vector>

#include "drcoto/lp.h"

namespace drcoto {

struct SampleSpace {
  std::vector<double> values;  // bits, strictly increasing
  std::vector<double> edges;   // K + 1 bin boundaries, last may be +inf

  int size() const { return static_cast<int>(values.size()); }
  // Bin k holds [edges[k], edges[k + 1]); -1 when outside.
  int bin_of(double sample) const;
  bool valid() const;

  // Midpoint edges with outer edges at 0 and +inf.
  static SampleSpace with_midpoint_edges(std::vector<double> values_bits);
};

struct Distribution {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  bool valid(double tol = 1e-9) const;
  static Distribution unit(int k, int size);
  friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct AmbiguitySet {
  SampleSpace space;
  std::vector<Distribution> references;  // one per GU
  double radius = 0.0;
};

double mean(const Distribution& dist, const SampleSpace& space);

Distribution build_reference(const std::vector<double>& samples, const SampleSpace& space);
double l1_distance(const Distribution& p, const Distribution& q);

// sum_{i,k} coef[i * K + k] * p_{i,k} <= rhs
struct ExpectationRow {
  std::vector<double> coef;
  double rhs = 0.0;
  std::string tag;
};

struct WorstCase {
  std::vector<Distribution> dists;
  double objective = 0.0;
  int rows_kept = 0;
};

// Maximizes sum p_{i,k} costs[i][k] over the product of L1 balls subject to
// the side rows. Throws Error(kInfeasible) when no distribution in the balls
// satisfies the side rows.
WorstCase worst_case_distribution(const std::vector<std::vector<double>>& costs,
                                  const AmbiguitySet& amb,
                                  const std::vector<ExpectationRow>& side,
                                  const LpOptions& options = {});

}  // namespace drcoto
