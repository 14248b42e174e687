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
#include "drcoto/harness.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <cctype>

#include "drcoto/cost_model.h"
#include "drcoto/defaults.h"
#include "drcoto/error.h"
#include "drcoto/rng.h"
#include "drcoto/units.h"
#include "json.hpp"

namespace drcoto {

namespace {

enum Stream : std::uint64_t { kGuPosition = 1, kTruth = 2, kSamples = 3, kDataset = 4 };

}  // namespace

std::vector<double> default_sample_space_mbit() { return {0.2, 0.5, 1.0, 1.5, 2.0}; }

Scenario generate_scenario(std::uint64_t seed, const ScenarioOverrides& ov) {
  namespace d = defaults;
  using units::dbm_to_watts;
  using units::db_to_linear;
  Scenario s;
  s.area_x_m = d::kAreaX;
  s.area_y_m = d::kAreaY;
  s.min_separation_m = d::kMinSeparation;
  s.time.num_slots = ov.num_slots.value_or(d::kNumSlots);
  s.time.slot_len_s = ov.slot_len_s.value_or(d::kSlotLen);
  s.size_mode = TaskSizeMode::kPerSlot;

  const int I = ov.num_gus.value_or(d::kNumGus);
  for (int i = 0; i < I; ++i) {
    Rng rng(derive_seed(seed, {kGuPosition, static_cast<std::uint64_t>(i)}));
    GroundUser g;
    g.id = i;
    g.position.x = rng.uniform(0.0, s.area_x_m);
    g.position.y = rng.uniform(0.0, s.area_y_m);
    g.cpu_cycles_per_bit = d::kGuCyclesPerBit;
    g.local_cpu_hz = d::kGuCpuHz;
    g.capacitance = d::kGuCapacitance;
    g.tx_power_w = dbm_to_watts(d::kGuTxPowerDbm);
    g.energy_budget_j = d::kGuEnergyBudget;
    s.gus.push_back(g);
  }

  const int J = ov.num_uavs.value_or(d::kNumUavs);
  const double span = std::min(0.6 * s.time.num_slots * d::kCruiseSpeed * s.time.slot_len_s,
                               s.area_x_m);
  const double cx = 0.5 * s.area_x_m;
  for (int j = 0; j < J; ++j) {
    Uav u;
    u.id = j;
    const double y = s.area_y_m * (j + 1) / (J + 1);
    u.start = {cx - 0.5 * span, y, d::kUavAltitude};
    u.end = {cx + 0.5 * span, y, d::kUavAltitude};
    u.cpu_hz = d::kUavCpuHz;
    u.capacitance = d::kUavCapacitance;
    u.tx_power_w = dbm_to_watts(d::kUavTxPowerDbm);
    u.energy_budget_j = d::kUavEnergyBudget;
    u.cruise_speed_mps = d::kCruiseSpeed;
    u.quota = ov.uav_quota.value_or(d::kUavQuota);
    s.uavs.push_back(u);
  }

  s.hap.position = {cx, 0.5 * s.area_y_m, d::kHapAltitude};
  s.hap.cpu_hz = d::kHapCpuHz;
  s.hap.capacitance = d::kHapCapacitance;
  s.hap.energy_budget_j = d::kHapEnergyBudget;
  s.hap.quota = ov.hap_quota.value_or(d::kHapQuota);

  ChannelParams& c = s.channel;
  c.los_a = d::kLosA;
  c.los_b = d::kLosB;
  c.beta0 = db_to_linear(d::kBeta0Db);
  c.pathloss_exp = d::kPathlossExp;
  c.nlos_atten = d::kNlosAtten;
  c.bandwidth_gu_hz = d::kBandwidthGu;
  c.noise_power_w = dbm_to_watts(d::kNoiseDbm);
  c.interference_w = dbm_to_watts(d::kInterferenceDbm);
  c.bandwidth_uh_hz = d::kBandwidthUh;
  c.antenna_gain = db_to_linear(d::kAntennaGainDb);
  c.total_loss = db_to_linear(d::kTotalLossDb);
  c.boltzmann = d::kBoltzmann;
  c.noise_temp_k = d::kNoiseTemp;
  c.carrier_freq_hz = d::kCarrierFreq;
  c.light_speed_mps = d::kLightSpeed;

  PropulsionParams& p = s.propulsion;
  p.blade_power_w = d::kBladePower;
  p.induced_power_w = d::kInducedPower;
  p.tip_speed_mps = d::kTipSpeed;
  p.drag_ratio = d::kDragRatio;
  p.air_density = d::kAirDensity;
  p.rotor_solidity = d::kRotorSolidity;
  p.rotor_area_m2 = d::kRotorArea;
  p.mean_rotor_velocity = d::kMeanRotorVelocity;
  return s;
}

History generate_history(std::uint64_t seed, const Scenario& s, const SampleSpace& space,
                         int num_samples) {
  if (num_samples < 1) throw Error(ErrorCode::kInvalidInput, "history length must be >= 1");
  if (!space.valid()) throw Error(ErrorCode::kInvalidInput, "invalid sample space");
  const int K = space.size();
  History h;
  for (int i = 0; i < s.num_gus(); ++i) {
    const auto key = static_cast<std::uint64_t>(i);
    Rng truth_rng(derive_seed(seed, {kTruth, key}));
    Distribution truth;
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
      truth.probs.push_back(1.0 + 0.5 * truth_rng.uniform(-1.0, 1.0));
      total += truth.probs.back();
    }
    for (double& p : truth.probs) p /= total;

    Rng rng(derive_seed(seed, {kSamples, key}));
    std::vector<double> samples;
    samples.reserve(num_samples);
    for (int q = 0; q < num_samples; ++q) {
      const int k = rng.categorical(truth.probs);
      const double lo = space.edges[k];
      double hi = space.edges[k + 1];
      if (!std::isfinite(hi)) hi = 2.0 * space.values[k] - lo;
      samples.push_back(rng.uniform(lo, hi));
    }
    h.samples.push_back(std::move(samples));
    h.truths.push_back(std::move(truth));
  }
  return h;
}

AmbiguitySet build_ambiguity(const History& history, const SampleSpace& space, double radius) {
  AmbiguitySet amb;
  amb.space = space;
  amb.radius = radius;
  for (const auto& samples : history.samples)
    amb.references.push_back(build_reference(samples, space));
  return amb;
}

std::vector<std::vector<double>> generate_datasets(std::uint64_t seed,
                                                   const std::vector<Distribution>& truths,
                                                   const SampleSpace& space, int count) {
  std::vector<std::vector<double>> out(count);
  for (int t = 0; t < count; ++t)
    for (std::size_t i = 0; i < truths.size(); ++i) {
      Rng rng(derive_seed(seed, {kDataset, static_cast<std::uint64_t>(t), i}));
      out[t].push_back(space.values[rng.categorical(truths[i].probs)]);
    }
  return out;
}

ActualDelay evaluate_actual(const SolveReport& sol, const std::vector<std::vector<double>>& datasets,
                            const Scenario& s) {
  ActualDelay a;
  for (const auto& sizes : datasets) {
    if (static_cast<int>(sizes.size()) != s.num_gus())
      throw Error(ErrorCode::kInvalidInput, "dataset size does not match the GU count");
    std::vector<double> bits;
    for (double v : sizes) bits.push_back(s.per_slot_bits(v));
    a.per_dataset.push_back(expected_costs(sol.decisions, sol.trajectories, s, bits).total_delay);
  }
  if (a.per_dataset.empty()) return a;
  const double n = static_cast<double>(a.per_dataset.size());
  for (double v : a.per_dataset) a.mean += v;
  a.mean /= n;
  double var = 0.0;
  for (double v : a.per_dataset) var += (v - a.mean) * (v - a.mean);
  a.std = std::sqrt(var / n);
  return a;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::kDO: return "DO";
    case Method::kSO: return "SO";
    case Method::kRO: return "RO";
    case Method::kDRCOTO: return "DRCOTO";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "do") return Method::kDO;
  if (t == "so") return Method::kSO;
  if (t == "ro") return Method::kRO;
  if (t == "drcoto") return Method::kDRCOTO;
  throw Error(ErrorCode::kInvalidInput, "unknown method '" + text + "'");
}

SolveReport solve_method(Method m, const Scenario& s, const AmbiguitySet& amb,
                         const SolveOptions& options) {
  switch (m) {
    case Method::kDO: return solve_baseline(BaselineMode::kDO, s, amb, options);
    case Method::kSO: return solve_baseline(BaselineMode::kSO, s, amb, options);
    case Method::kRO: return solve_baseline(BaselineMode::kRO, s, amb, options);
    case Method::kDRCOTO: return drcoto_solve(s, amb, options);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown method");
}

ExperimentConfig parse_experiment_json(const std::string& text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("experiment config: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::kInvalidInput, "experiment config must be an object");
  static const std::set<std::string> keys = {
      "seed", "gu_counts", "eps_values", "quota_values", "methods", "eps", "quota", "num_slots",
      "history_len", "eval_datasets", "output_dir", "timing", "solve"};
  static const std::set<std::string> solve_keys = {
      "sca_tol", "benders_tol", "outer_tol", "sca_max", "benders_max", "outer_max",
      "penalty", "warm_start", "master_node_limit"};
  ExperimentConfig c;
  try {
    for (const auto& item : root.items())
      if (!keys.count(item.key()))
        throw Error(ErrorCode::kInvalidInput, "unknown key '" + item.key() + "' in experiment");
    if (root.contains("seed")) c.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("gu_counts")) c.gu_counts = root["gu_counts"].get<std::vector<int>>();
    if (root.contains("eps_values")) c.eps_values = root["eps_values"].get<std::vector<double>>();
    if (root.contains("quota_values")) c.quota_values = root["quota_values"].get<std::vector<int>>();
    if (root.contains("methods")) {
      c.methods.clear();
      for (const auto& m : root["methods"]) c.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (root.contains("eps")) c.eps = root["eps"].get<double>();
    if (root.contains("quota")) c.quota = root["quota"].get<int>();
    if (root.contains("num_slots")) c.num_slots = root["num_slots"].get<int>();
    if (root.contains("history_len")) c.history_len = root["history_len"].get<int>();
    if (root.contains("eval_datasets")) c.eval_datasets = root["eval_datasets"].get<int>();
    if (root.contains("output_dir")) c.output_dir = root["output_dir"].get<std::string>();
    if (root.contains("timing")) c.timing = root["timing"].get<bool>();
    if (root.contains("solve")) {
      const json& sv = root["solve"];
      if (!sv.is_object()) throw Error(ErrorCode::kInvalidInput, "experiment.solve must be an object");
      for (const auto& item : sv.items())
        if (!solve_keys.count(item.key()))
          throw Error(ErrorCode::kInvalidInput, "unknown key '" + item.key() + "' in solve");
      Tolerances& t = c.solve.tol;
      if (sv.contains("sca_tol")) t.sca = sv["sca_tol"].get<double>();
      if (sv.contains("benders_tol")) t.benders = sv["benders_tol"].get<double>();
      if (sv.contains("outer_tol")) t.outer = sv["outer_tol"].get<double>();
      if (sv.contains("sca_max")) t.sca_max = sv["sca_max"].get<int>();
      if (sv.contains("benders_max")) t.benders_max = sv["benders_max"].get<int>();
      if (sv.contains("outer_max")) t.outer_max = sv["outer_max"].get<int>();
      if (sv.contains("penalty")) c.solve.penalty = sv["penalty"].get<double>();
      if (sv.contains("warm_start")) c.solve.warm_start = sv["warm_start"].get<bool>();
      if (sv.contains("master_node_limit"))
        c.solve.master.node_limit = sv["master_node_limit"].get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("experiment config: ") + e.what());
  }
  auto positive = [](const auto& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](auto x) { return x >= 1; });
  };
  if (!positive(c.gu_counts) || !positive(c.quota_values) || c.methods.empty())
    throw Error(ErrorCode::kInvalidInput, "experiment lists must be nonempty with counts >= 1");
  if (std::any_of(c.eps_values.begin(), c.eps_values.end(), [](double e) { return e < 0.0; }) ||
      c.eps < 0.0)
    throw Error(ErrorCode::kInvalidInput, "radius values must be nonnegative");
  if (c.num_slots < 1 || c.history_len < 1 || c.eval_datasets < 1 || c.quota < 0)
    throw Error(ErrorCode::kInvalidInput, "experiment counts must be >= 1");
  return c;
}

namespace {

struct Cell {
  Method method;
  int gus;
  double eps;
  int quota;
  bool ok = false;
  double objective = 0.0;
  ActualDelay actual;
};

bool leq(double a, double b) { return a <= b + 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
  const SampleSpace space = SampleSpace::with_midpoint_edges([] {
    std::vector<double> b;
    for (double v : default_sample_space_mbit()) b.push_back(units::mbit_to_bits(v));
    return b;
  }());
  std::vector<Cell> cells;
  SweepResult out;

  auto run = [&](Method m, int gus, double eps, int quota) {
    for (const Cell& c : cells)
      if (c.method == m && c.gus == gus && c.eps == eps && c.quota == quota) return c;
    ScenarioOverrides ov;
    ov.num_gus = gus;
    ov.num_slots = config.num_slots;
    ov.uav_quota = quota;
    const Scenario s = generate_scenario(config.seed, ov);
    const History h = generate_history(config.seed, s, space, config.history_len);
    const AmbiguitySet amb = build_ambiguity(h, space, eps);
    Cell cell{m, gus, eps, quota, false, 0.0, {}};
    double wall = 0.0;
    try {
      const SolveReport rep = solve_method(m, s, amb, config.solve);
      const auto data = generate_datasets(config.seed, h.truths, space, config.eval_datasets);
      cell.objective = rep.objective;
      cell.actual = evaluate_actual(rep, data, s);
      if (!rep.feasible ||
          !audit_solution(rep.decisions, rep.trajectories, rep.worst_dists, space, s).ok())
        ++out.audit_failures;
      cell.ok = true;
      wall = config.timing ? rep.wall_time : 0.0;
    } catch (const Error&) {
      ++out.failed_cells;
    }
    const std::string obj = cell.ok ? format_double(cell.objective) : "failed";
    out.objective.add_row({to_string(m), std::to_string(gus), format_double(eps),
                           std::to_string(quota), obj, format_double(wall)});
    if (cell.ok)
      out.actual.add_row({to_string(m), std::to_string(gus), format_double(eps),
                          std::to_string(quota), format_double(cell.actual.mean),
                          format_double(cell.actual.std)});
    cells.push_back(cell);
    return cell;
  };

  auto add_check = [&](std::string name, bool passed, std::string detail) {
    out.trend_checks.push_back({name, passed, detail});
    out.checks.add_row({std::move(name), passed ? "1" : "0", std::move(detail)});
  };

  // Objective against GU count, every method.
  std::map<Method, std::vector<Cell>> by_method;
  for (int gus : config.gu_counts)
    for (Method m : config.methods) by_method[m].push_back(run(m, gus, config.eps, config.quota));
  for (const auto& [m, row] : by_method) {
    bool mono = true;
    std::string detail;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) detail += " ";
      detail += row[k].ok ? format_double(row[k].objective) : "failed";
      if (k && (!row[k].ok || !row[k - 1].ok || !leq(row[k - 1].objective, row[k].objective)))
        mono = false;
    }
    add_check(std::string("objective_nondecreasing_in_I_") + to_string(m), mono, detail);
  }
  auto find = [&](Method m, std::size_t k) -> const Cell* {
    auto it = by_method.find(m);
    return it == by_method.end() ? nullptr : &it->second[k];
  };
  for (std::size_t k = 0; k < config.gu_counts.size(); ++k) {
    const Cell* so = find(Method::kSO, k);
    const Cell* dr = find(Method::kDRCOTO, k);
    const Cell* ro = find(Method::kRO, k);
    if (!so || !dr || !ro) continue;
    const bool ok = so->ok && dr->ok && ro->ok && leq(so->objective, dr->objective) &&
                    leq(dr->objective, ro->objective);
    std::string detail = "SO=" + format_double(so->objective) +
                         " DRCOTO=" + format_double(dr->objective) +
                         " RO=" + format_double(ro->objective);
    if (const Cell* dc = find(Method::kDO, k)) detail += " DO=" + format_double(dc->objective);
    add_check("ordering_SO_DRCOTO_RO_I" + std::to_string(config.gu_counts[k]), ok, detail);
  }
  {
    const std::size_t last = config.gu_counts.size() - 1;
    const Cell* dr = find(Method::kDRCOTO, last);
    const Cell* ro = find(Method::kRO, last);
    const Cell* dc = find(Method::kDO, last);
    const Cell* so = find(Method::kSO, last);
    if (dr && ro && dc) {
      const bool ok = dr->ok && ro->ok && dc->ok && leq(dr->actual.std, ro->actual.std) &&
                      leq(dr->actual.std, dc->actual.std);
      std::string detail = "DRCOTO=" + format_double(dr->actual.std) +
                           " RO=" + format_double(ro->actual.std) +
                           " DO=" + format_double(dc->actual.std);
      if (so) detail += " SO=" + format_double(so->actual.std);
      add_check("actual_std_DRCOTO_le_RO_DO", ok, detail);
    }
  }

  // DRCOTO against quota and radius at the largest GU count.
  const int gus = *std::max_element(config.gu_counts.begin(), config.gu_counts.end());
  std::vector<Cell> quota_row, eps_row;
  for (int q : config.quota_values) quota_row.push_back(run(Method::kDRCOTO, gus, config.eps, q));
  for (double e : config.eps_values) eps_row.push_back(run(Method::kDRCOTO, gus, e, config.quota));
  auto monotone = [&](const std::vector<Cell>& row, bool increasing, const std::string& name) {
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) detail += " ";
      detail += row[k].ok ? format_double(row[k].objective) : "failed";
      if (!k) continue;
      if (!row[k].ok || !row[k - 1].ok) ok = false;
      else if (increasing ? !leq(row[k - 1].objective, row[k].objective)
                          : !leq(row[k].objective, row[k - 1].objective))
        ok = false;
    }
    add_check(name, ok, detail);
  };
  monotone(quota_row, false, "DRCOTO_nonincreasing_in_quota");
  monotone(eps_row, true, "DRCOTO_nondecreasing_in_eps");
  add_check("audit_all_cells", out.audit_failures == 0 && out.failed_cells == 0,
            std::to_string(cells.size()) + " cells, " + std::to_string(out.audit_failures) +
                " audit failures, " + std::to_string(out.failed_cells) + " failed");
  return out;
}

CsvTable trajectory_table(const TrajectoryPlan& plan) {
  CsvTable t({"j", "n", "x_m", "y_m"});
  for (int j = 0; j < plan.num_uavs(); ++j)
    for (int w = 0; w <= plan.num_slots(); ++w) {
      const Vec2 p = plan.waypoint(j, w);
      t.add_row({std::to_string(j), std::to_string(w), format_double(p.x), format_double(p.y)});
    }
  return t;
}

CsvTable decision_table(const OffloadDecision& dec) {
  CsvTable t({"i", "j", "n", "x", "y", "z"});
  for (int i = 0; i < dec.num_gus(); ++i)
    for (int j = 0; j < dec.num_uavs(); ++j)
      for (int n = 0; n < dec.num_slots(); ++n)
        t.add_row({std::to_string(i), std::to_string(j), std::to_string(n),
                   dec.x(i, j, n) ? "1" : "0", dec.y(i, j, n) ? "1" : "0",
                   dec.z(i, j, n) ? "1" : "0"});
  return t;
}

CsvTable bounds_table(const SolveReport& rep) {
  CsvTable t({"omega", "UB", "LB"});
  for (std::size_t k = 0; k < rep.ub_trace.size(); ++k)
    t.add_row({std::to_string(k + 1), format_double(rep.ub_trace[k]),
               format_double(rep.lb_trace[k])});
  return t;
}

CsvTable solve_log_table(const SolveReport& rep) {
  CsvTable t({"outer", "omega", "UB", "LB", "cuts", "sca_iters", "master_nodes"});
  for (const BendersStep& s : rep.steps)
    t.add_row({std::to_string(s.outer), std::to_string(s.omega), format_double(s.ub),
               format_double(s.lb), std::to_string(s.cuts), std::to_string(s.sca_iters),
               std::to_string(s.master_nodes)});
  return t;
}

}  // namespace drcoto
