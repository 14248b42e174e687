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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drcoto/baselines.h"
#include "drcoto/csv.h"
#include "drcoto/drcoto.h"
#include "drcoto/scenario_io.h"

namespace drcoto {

struct ScenarioOverrides {
  std::optional<int> num_gus;
  std::optional<int> num_uavs;
  std::optional<int> num_slots;
  std::optional<int> uav_quota;
  std::optional<int> hap_quota;
  std::optional<double> slot_len_s;
};

// Task sizes of the sample space, Mbit.
std::vector<double> default_sample_space_mbit();

Scenario generate_scenario(std::uint64_t seed, const ScenarioOverrides& overrides = {});

struct History {
  std::vector<std::vector<double>> samples;  // [i][q], bits
  std::vector<Distribution> truths;          // hidden per-GU distributions
};

History generate_history(std::uint64_t seed, const Scenario& scenario, const SampleSpace& space,
                         int num_samples = 200);

AmbiguitySet build_ambiguity(const History& history, const SampleSpace& space, double radius);

// datasets[t][i] is GU i's realized size (bits), drawn from the hidden truths.
std::vector<std::vector<double>> generate_datasets(std::uint64_t seed,
                                                   const std::vector<Distribution>& truths,
                                                   const SampleSpace& space, int count = 5);

struct ActualDelay {
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> per_dataset;
};

ActualDelay evaluate_actual(const SolveReport& solution,
                            const std::vector<std::vector<double>>& datasets,
                            const Scenario& scenario);

enum class Method { kDO, kSO, kRO, kDRCOTO };
const char* to_string(Method method);
Method parse_method(const std::string& text);

SolveReport solve_method(Method method, const Scenario& scenario, const AmbiguitySet& amb,
                         const SolveOptions& options);

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<int> gu_counts = {6, 9, 12, 15};
  std::vector<double> eps_values = {0.1, 0.3, 0.5};
  std::vector<int> quota_values = {1, 2, 3};
  std::vector<Method> methods = {Method::kDO, Method::kSO, Method::kDRCOTO, Method::kRO};
  double eps = 0.3;        // for the gu-count sweep
  int quota = 3;           // for the eps sweep
  int num_slots = 5;
  int history_len = 200;
  int eval_datasets = 5;
  std::string output_dir = ".";
  bool timing = true;  // false writes 0 wall times for byte-identical output
  SolveOptions solve;
};

ExperimentConfig parse_experiment_json(const std::string& text);

struct TrendCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SweepResult {
  CsvTable objective{{"method", "I", "eps", "quota", "objective", "wall_time"}};
  CsvTable actual{{"method", "I", "eps", "quota", "mean", "std"}};
  CsvTable checks{{"check", "passed", "detail"}};
  std::vector<TrendCheck> trend_checks;
  int failed_cells = 0;
  int audit_failures = 0;  // cells whose solution fails exact re-validation
};

SweepResult run_sweep(const ExperimentConfig& config);

// Per-solution dumps.
CsvTable trajectory_table(const TrajectoryPlan& plan);
CsvTable decision_table(const OffloadDecision& dec);
CsvTable bounds_table(const SolveReport& report);
// One row per Benders iteration of every outer step.
CsvTable solve_log_table(const SolveReport& report);

}  // namespace drcoto
