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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "drcoto/cost_model.h"
#include "drcoto/error.h"
#include "drcoto/harness.h"
#include "drcoto/scenario_io.h"
#include "drcoto/units.h"

namespace fs = std::filesystem;
using namespace drcoto;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNotConverged = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<double> default_space_bits() {
  std::vector<double> b;
  for (double v : default_sample_space_mbit()) b.push_back(units::mbit_to_bits(v));
  return b;
}

struct Generated {
  ScenarioConfig config;
  History history;
};

ScenarioOverrides overrides(int gus, int slots, int quota) {
  ScenarioOverrides ov;
  if (gus > 0) ov.num_gus = gus;
  if (slots > 0) ov.num_slots = slots;
  if (quota >= 0) ov.uav_quota = quota;
  return ov;
}

// One column per GU, one row per sample, Mbit.
CsvTable history_table(const History& h) {
  std::vector<std::string> header;
  for (std::size_t i = 0; i < h.samples.size(); ++i) header.push_back("gu" + std::to_string(i));
  CsvTable t(header);
  const std::size_t q_len = h.samples.empty() ? 0 : h.samples.front().size();
  for (std::size_t q = 0; q < q_len; ++q) {
    std::vector<std::string> row;
    for (const auto& col : h.samples) row.push_back(format_double(units::bits_to_mbit(col[q])));
    t.add_row(std::move(row));
  }
  return t;
}

History read_history(const std::string& path, int num_gus) {
  const CsvTable t = read_csv(path);
  if (static_cast<int>(t.header().size()) != num_gus)
    throw Error(ErrorCode::kInvalidInput, "history has " + std::to_string(t.header().size()) +
                                              " columns for " + std::to_string(num_gus) + " GUs");
  History h;
  h.samples.resize(num_gus);
  for (const auto& row : t.rows())
    for (int i = 0; i < num_gus; ++i)
      h.samples[i].push_back(units::mbit_to_bits(std::stod(row.at(i))));
  return h;
}

CsvTable dist_table(const std::vector<Distribution>& dists, const SampleSpace& space) {
  CsvTable t({"i", "size_mbit", "p"});
  for (std::size_t i = 0; i < dists.size(); ++i)
    for (int k = 0; k < space.size(); ++k)
      t.add_row({std::to_string(i), format_double(units::bits_to_mbit(space.values[k])),
                 format_double(dists[i].probs[k])});
  return t;
}

CsvTable datasets_table(const std::vector<std::vector<double>>& data) {
  CsvTable t({"t", "i", "size_mbit"});
  for (std::size_t d = 0; d < data.size(); ++d)
    for (std::size_t i = 0; i < data[d].size(); ++i)
      t.add_row({std::to_string(d), std::to_string(i),
                 format_double(units::bits_to_mbit(data[d][i]))});
  return t;
}

std::vector<std::vector<double>> read_datasets(const std::string& path) {
  std::vector<std::vector<double>> data;
  const CsvTable table = read_csv(path);
  for (const auto& row : table.rows()) {
    const std::size_t t = std::stoul(row.at(0));
    if (data.size() <= t) data.resize(t + 1);
    data[t].push_back(units::mbit_to_bits(std::stod(row.at(2))));
  }
  return data;
}

// Combines the tables that carry (i, j, n) or (j, n) keys back into a solution.
SolveReport read_solution(const std::string& decisions, const std::string& trajectory,
                          const Scenario& s) {
  SolveReport rep;
  rep.decisions = OffloadDecision(s.num_gus(), s.num_uavs(), s.num_slots());
  const CsvTable dec_table = read_csv(decisions);
  for (const auto& r : dec_table.rows())
    rep.decisions.set_raw(std::stoi(r.at(0)), std::stoi(r.at(1)), std::stoi(r.at(2)),
                          r.at(3) == "1", r.at(4) == "1", r.at(5) == "1");
  rep.trajectories = TrajectoryPlan(s.num_uavs(), s.num_slots(), s.uav_altitude());
  const CsvTable traj_table = read_csv(trajectory);
  for (const auto& r : traj_table.rows())
    rep.trajectories.waypoint(std::stoi(r.at(0)), std::stoi(r.at(1))) = {std::stod(r.at(2)),
                                                                         std::stod(r.at(3))};
  return rep;
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributionally robust computation offloading and UAV trajectory design"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int gus = -1, slots = -1, quota = -1, history_len = 200, datasets = 5;
  std::string out_dir = ".";

  auto* gen = app.add_subcommand("generate", "Write a scenario, its history and datasets");
  gen->add_option("--seed", seed);
  gen->add_option("--gus", gus, "GU count");
  gen->add_option("--slots", slots, "slot count");
  gen->add_option("--quota", quota, "per-UAV quota");
  gen->add_option("--history-len", history_len)->check(CLI::PositiveNumber);
  gen->add_option("--datasets", datasets)->check(CLI::PositiveNumber);
  gen->add_option("--out-dir", out_dir);

  std::string method = "drcoto", config_path, history_path;
  double eps = 0.3;
  bool no_timing = false;
  auto* solve = app.add_subcommand("solve", "Solve one scenario with one method");
  solve->add_option("--method", method)->check(CLI::IsMember({"do", "so", "ro", "drcoto"}));
  solve->add_option("--eps", eps)->check(CLI::NonNegativeNumber);
  solve->add_option("--seed", seed);
  solve->add_option("--config", config_path, "scenario JSON; generated from the seed if absent");
  solve->add_option("--history", history_path, "history CSV, one column per GU (Mbit)");
  solve->add_option("--gus", gus);
  solve->add_option("--slots", slots);
  solve->add_option("--quota", quota);
  solve->add_option("--history-len", history_len)->check(CLI::PositiveNumber);
  solve->add_option("--out-dir", out_dir);
  solve->add_flag("--no-timing", no_timing, "write 0 wall times");

  std::string experiment_path;
  auto* sweep = app.add_subcommand("sweep", "Run the parameter sweep of an experiment config");
  sweep->add_option("--config", experiment_path)->required();
  sweep->add_option("--out-dir", out_dir, "overrides the config's output_dir");

  std::string decisions_path, trajectory_path, datasets_path;
  auto* eval = app.add_subcommand("eval", "Actual-delay statistics of a solution");
  eval->add_option("--config", config_path, "scenario JSON")->required();
  eval->add_option("--decisions", decisions_path)->required();
  eval->add_option("--trajectory", trajectory_path)->required();
  eval->add_option("--datasets", datasets_path)->required();
  eval->add_option("--out-dir", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen) {
      ScenarioConfig cfg{generate_scenario(seed, overrides(gus, slots, quota)), default_space_bits()};
      const SampleSpace space = SampleSpace::with_midpoint_edges(cfg.sample_space_bits);
      const History h = generate_history(seed, cfg.scenario, space, history_len);
      ensure_dir(out_dir);
      save_scenario(cfg, out_dir + "/scenario.json");
      history_table(h).write(out_dir + "/history.csv");
      dist_table(h.truths, space).write(out_dir + "/truths.csv");
      datasets_table(generate_datasets(seed, h.truths, space, datasets))
          .write(out_dir + "/datasets.csv");
      return 0;
    }

    if (*solve) {
      ScenarioConfig cfg = config_path.empty()
                               ? ScenarioConfig{generate_scenario(seed, overrides(gus, slots, quota)),
                                                default_space_bits()}
                               : load_scenario(config_path);
      const Scenario& s = cfg.scenario;
      const ValidationResult v = validate_scenario(s);
      if (!v.ok()) {
        std::cerr << "invalid scenario: " << v.summary() << "\n";
        return kExitValidation;
      }
      const SampleSpace space = SampleSpace::with_midpoint_edges(cfg.sample_space_bits);
      const History h = history_path.empty() ? generate_history(seed, s, space, history_len)
                                             : read_history(history_path, s.num_gus());
      const AmbiguitySet amb = build_ambiguity(h, space, eps);
      const SolveReport rep = solve_method(parse_method(method), s, amb, SolveOptions{});
      const DecisionAudit audit =
          audit_solution(rep.decisions, rep.trajectories, rep.worst_dists, space, s);

      ensure_dir(out_dir);
      CsvTable obj({"method", "I", "eps", "quota", "objective", "wall_time"});
      obj.add_row({rep.method, std::to_string(s.num_gus()), format_double(eps),
                   std::to_string(s.uavs.empty() ? 0 : s.uavs.front().quota),
                   format_double(rep.objective), format_double(no_timing ? 0.0 : rep.wall_time)});
      obj.write(out_dir + "/objective.csv");
      trajectory_table(rep.trajectories).write(out_dir + "/trajectory.csv");
      decision_table(rep.decisions).write(out_dir + "/decisions.csv");
      bounds_table(rep).write(out_dir + "/bounds.csv");
      solve_log_table(rep).write(out_dir + "/solve_log.csv");
      dist_table(rep.worst_dists, space).write(out_dir + "/worst_dists.csv");
      std::cout << rep.method << " objective " << format_double(rep.objective) << " s, "
                << rep.outer_iters << " outer, " << rep.benders_iters << " Benders, "
                << rep.sca_iters << " SCA iterations\n";
      if (!audit.ok()) {
        std::cerr << "solution audit failed: " << audit.decision.summary() << " "
                  << audit.trajectory.summary() << " budget violation "
                  << format_double(audit.budget_violation) << "\n";
        return kExitValidation;
      }
      if (!rep.converged) {
        std::cerr << "solver did not converge within the iteration limits\n";
        return kExitNotConverged;
      }
      return 0;
    }

    if (*sweep) {
      ExperimentConfig cfg = parse_experiment_json(read_file(experiment_path));
      if (sweep->count("--out-dir")) cfg.output_dir = out_dir;
      const SweepResult r = run_sweep(cfg);
      ensure_dir(cfg.output_dir);
      r.objective.write(cfg.output_dir + "/objective.csv");
      r.actual.write(cfg.output_dir + "/actual.csv");
      r.checks.write(cfg.output_dir + "/checks.csv");
      for (const TrendCheck& c : r.trend_checks)
        std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << "  " << c.detail << "\n";
      return r.failed_cells > 0 ? kExitNotConverged : 0;
    }

    if (*eval) {
      const ScenarioConfig cfg = load_scenario(config_path);
      const SolveReport sol = read_solution(decisions_path, trajectory_path, cfg.scenario);
      const ValidationResult dv = validate_decision(sol.decisions, cfg.scenario);
      const ValidationResult tv = validate_trajectory(sol.trajectories, cfg.scenario);
      if (!dv.ok() || !tv.ok()) {
        std::cerr << "invalid solution: " << dv.summary() << " " << tv.summary() << "\n";
        return kExitValidation;
      }
      const ActualDelay a = evaluate_actual(sol, read_datasets(datasets_path), cfg.scenario);
      ensure_dir(out_dir);
      CsvTable t({"method", "mean", "std"});
      t.add_row({"given", format_double(a.mean), format_double(a.std)});
      t.write(out_dir + "/actual.csv");
      std::cout << "mean " << format_double(a.mean) << " s, std " << format_double(a.std) << " s\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidInput || e.code() == ErrorCode::kNoFeasibleStart
               ? kExitValidation
               : 1;
  }
  return 0;
}
