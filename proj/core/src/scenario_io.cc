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
#include "drcoto/scenario_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "drcoto/defaults.h"
#include "drcoto/error.h"
#include "drcoto/units.h"
#include "json.hpp"

namespace drcoto {

using nlohmann::json;
using namespace units;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::kInvalidInput, where + " must be an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw Error(ErrorCode::kInvalidInput, "unknown key '" + item.key() + "' in " + where);
  for (const std::string& key : allowed)
    if (!obj.contains(key))
      throw Error(ErrorCode::kInvalidInput, "missing key '" + key + "' in " + where);
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, where + "." + key + ": " + e.what());
  }
}

const std::set<std::string> kTopKeys = {"area_x_m", "area_y_m", "min_separation_m", "num_slots",
                                        "slot_len_s", "size_mode", "sample_space_mbit", "gus",
                                        "uavs", "hap", "channel", "propulsion"};
const std::set<std::string> kGuKeys = {"id", "x_m", "y_m", "cpu_cycles_per_bit", "local_cpu_hz",
                                       "capacitance", "tx_power_dbm", "energy_budget_j"};
const std::set<std::string> kUavKeys = {"id", "start_x_m", "start_y_m", "end_x_m", "end_y_m",
                                        "altitude_m", "cpu_hz", "capacitance", "tx_power_dbm",
                                        "energy_budget_j", "cruise_speed_mps", "quota"};
const std::set<std::string> kHapKeys = {"x_m", "y_m", "altitude_m", "cpu_hz", "capacitance",
                                        "energy_budget_j", "quota"};
const std::set<std::string> kChannelKeys = {
    "los_a", "los_b_per_deg", "beta0_db", "pathloss_exp", "nlos_atten", "bandwidth_gu_hz",
    "noise_power_dbm", "interference_dbm", "bandwidth_uh_hz", "antenna_gain_db", "total_loss_db",
    "boltzmann_j_per_k", "noise_temp_k", "carrier_freq_hz", "light_speed_mps"};
const std::set<std::string> kPropulsionKeys = {
    "blade_power_w", "induced_power_w", "tip_speed_mps", "drag_ratio", "air_density_kg_m3",
    "rotor_solidity", "rotor_area_m2", "mean_rotor_velocity_mps", "induced_form"};

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("scenario JSON: ") + e.what());
  }
  check_keys(root, kTopKeys, "scenario");
  ScenarioConfig cfg;
  Scenario& s = cfg.scenario;
  s.area_x_m = get<double>(root, "area_x_m", "scenario");
  s.area_y_m = get<double>(root, "area_y_m", "scenario");
  s.min_separation_m = get<double>(root, "min_separation_m", "scenario");
  s.time.num_slots = get<int>(root, "num_slots", "scenario");
  s.time.slot_len_s = get<double>(root, "slot_len_s", "scenario");
  const std::string mode = get<std::string>(root, "size_mode", "scenario");
  if (mode == "per_slot") s.size_mode = TaskSizeMode::kPerSlot;
  else if (mode == "total_over_slots") s.size_mode = TaskSizeMode::kTotalOverSlots;
  else throw Error(ErrorCode::kInvalidInput, "size_mode must be per_slot or total_over_slots");
  for (double v : get<std::vector<double>>(root, "sample_space_mbit", "scenario"))
    cfg.sample_space_bits.push_back(mbit_to_bits(v));

  for (const json& g : root.at("gus")) {
    check_keys(g, kGuKeys, "gus[]");
    GroundUser gu;
    gu.id = get<int>(g, "id", "gus[]");
    gu.position = {get<double>(g, "x_m", "gus[]"), get<double>(g, "y_m", "gus[]"), 0.0};
    gu.cpu_cycles_per_bit = get<double>(g, "cpu_cycles_per_bit", "gus[]");
    gu.local_cpu_hz = get<double>(g, "local_cpu_hz", "gus[]");
    gu.capacitance = get<double>(g, "capacitance", "gus[]");
    gu.tx_power_w = dbm_to_watts(get<double>(g, "tx_power_dbm", "gus[]"));
    gu.energy_budget_j = get<double>(g, "energy_budget_j", "gus[]");
    s.gus.push_back(gu);
  }
  for (const json& u : root.at("uavs")) {
    check_keys(u, kUavKeys, "uavs[]");
    Uav uav;
    uav.id = get<int>(u, "id", "uavs[]");
    const double alt = get<double>(u, "altitude_m", "uavs[]");
    uav.start = {get<double>(u, "start_x_m", "uavs[]"), get<double>(u, "start_y_m", "uavs[]"), alt};
    uav.end = {get<double>(u, "end_x_m", "uavs[]"), get<double>(u, "end_y_m", "uavs[]"), alt};
    uav.cpu_hz = get<double>(u, "cpu_hz", "uavs[]");
    uav.capacitance = get<double>(u, "capacitance", "uavs[]");
    uav.tx_power_w = dbm_to_watts(get<double>(u, "tx_power_dbm", "uavs[]"));
    uav.energy_budget_j = get<double>(u, "energy_budget_j", "uavs[]");
    uav.cruise_speed_mps = get<double>(u, "cruise_speed_mps", "uavs[]");
    uav.quota = get<int>(u, "quota", "uavs[]");
    s.uavs.push_back(uav);
  }
  const json& h = root.at("hap");
  check_keys(h, kHapKeys, "hap");
  s.hap.position = {get<double>(h, "x_m", "hap"), get<double>(h, "y_m", "hap"),
                    get<double>(h, "altitude_m", "hap")};
  s.hap.cpu_hz = get<double>(h, "cpu_hz", "hap");
  s.hap.capacitance = get<double>(h, "capacitance", "hap");
  s.hap.energy_budget_j = get<double>(h, "energy_budget_j", "hap");
  s.hap.quota = get<int>(h, "quota", "hap");

  const json& c = root.at("channel");
  check_keys(c, kChannelKeys, "channel");
  ChannelParams& ch = s.channel;
  ch.los_a = get<double>(c, "los_a", "channel");
  ch.los_b = get<double>(c, "los_b_per_deg", "channel");
  ch.beta0 = db_to_linear(get<double>(c, "beta0_db", "channel"));
  ch.pathloss_exp = get<double>(c, "pathloss_exp", "channel");
  ch.nlos_atten = get<double>(c, "nlos_atten", "channel");
  ch.bandwidth_gu_hz = get<double>(c, "bandwidth_gu_hz", "channel");
  ch.noise_power_w = dbm_to_watts(get<double>(c, "noise_power_dbm", "channel"));
  ch.interference_w = dbm_to_watts(get<double>(c, "interference_dbm", "channel"));
  ch.bandwidth_uh_hz = get<double>(c, "bandwidth_uh_hz", "channel");
  ch.antenna_gain = db_to_linear(get<double>(c, "antenna_gain_db", "channel"));
  ch.total_loss = db_to_linear(get<double>(c, "total_loss_db", "channel"));
  ch.boltzmann = get<double>(c, "boltzmann_j_per_k", "channel");
  ch.noise_temp_k = get<double>(c, "noise_temp_k", "channel");
  ch.carrier_freq_hz = get<double>(c, "carrier_freq_hz", "channel");
  ch.light_speed_mps = get<double>(c, "light_speed_mps", "channel");

  const json& p = root.at("propulsion");
  check_keys(p, kPropulsionKeys, "propulsion");
  PropulsionParams& pp = s.propulsion;
  pp.blade_power_w = get<double>(p, "blade_power_w", "propulsion");
  pp.induced_power_w = get<double>(p, "induced_power_w", "propulsion");
  pp.tip_speed_mps = get<double>(p, "tip_speed_mps", "propulsion");
  pp.drag_ratio = get<double>(p, "drag_ratio", "propulsion");
  pp.air_density = get<double>(p, "air_density_kg_m3", "propulsion");
  pp.rotor_solidity = get<double>(p, "rotor_solidity", "propulsion");
  pp.rotor_area_m2 = get<double>(p, "rotor_area_m2", "propulsion");
  pp.mean_rotor_velocity = get<double>(p, "mean_rotor_velocity_mps", "propulsion");
  const std::string form = get<std::string>(p, "induced_form", "propulsion");
  if (form == "as_printed") pp.induced_form = InducedPowerForm::kAsPrinted;
  else if (form == "standard") pp.induced_form = InducedPowerForm::kStandard;
  else throw Error(ErrorCode::kInvalidInput, "induced_form must be as_printed or standard");
  return cfg;
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  const Scenario& s = cfg.scenario;
  json root;
  root["area_x_m"] = s.area_x_m;
  root["area_y_m"] = s.area_y_m;
  root["min_separation_m"] = s.min_separation_m;
  root["num_slots"] = s.time.num_slots;
  root["slot_len_s"] = s.time.slot_len_s;
  root["size_mode"] = s.size_mode == TaskSizeMode::kPerSlot ? "per_slot" : "total_over_slots";
  json space = json::array();
  for (double b : cfg.sample_space_bits) space.push_back(bits_to_mbit(b));
  root["sample_space_mbit"] = space;
  json gus = json::array();
  for (const GroundUser& g : s.gus)
    gus.push_back({{"id", g.id},
                   {"x_m", g.position.x},
                   {"y_m", g.position.y},
                   {"cpu_cycles_per_bit", g.cpu_cycles_per_bit},
                   {"local_cpu_hz", g.local_cpu_hz},
                   {"capacitance", g.capacitance},
                   {"tx_power_dbm", watts_to_dbm(g.tx_power_w)},
                   {"energy_budget_j", g.energy_budget_j}});
  root["gus"] = gus;
  json uavs = json::array();
  for (const Uav& u : s.uavs)
    uavs.push_back({{"id", u.id},
                    {"start_x_m", u.start.x},
                    {"start_y_m", u.start.y},
                    {"end_x_m", u.end.x},
                    {"end_y_m", u.end.y},
                    {"altitude_m", u.start.z},
                    {"cpu_hz", u.cpu_hz},
                    {"capacitance", u.capacitance},
                    {"tx_power_dbm", watts_to_dbm(u.tx_power_w)},
                    {"energy_budget_j", u.energy_budget_j},
                    {"cruise_speed_mps", u.cruise_speed_mps},
                    {"quota", u.quota}});
  root["uavs"] = uavs;
  root["hap"] = {{"x_m", s.hap.position.x},
                 {"y_m", s.hap.position.y},
                 {"altitude_m", s.hap.position.z},
                 {"cpu_hz", s.hap.cpu_hz},
                 {"capacitance", s.hap.capacitance},
                 {"energy_budget_j", s.hap.energy_budget_j},
                 {"quota", s.hap.quota}};
  const ChannelParams& ch = s.channel;
  root["channel"] = {{"los_a", ch.los_a},
                     {"los_b_per_deg", ch.los_b},
                     {"beta0_db", linear_to_db(ch.beta0)},
                     {"pathloss_exp", ch.pathloss_exp},
                     {"nlos_atten", ch.nlos_atten},
                     {"bandwidth_gu_hz", ch.bandwidth_gu_hz},
                     {"noise_power_dbm", watts_to_dbm(ch.noise_power_w)},
                     {"interference_dbm", watts_to_dbm(ch.interference_w)},
                     {"bandwidth_uh_hz", ch.bandwidth_uh_hz},
                     {"antenna_gain_db", linear_to_db(ch.antenna_gain)},
                     {"total_loss_db", linear_to_db(ch.total_loss)},
                     {"boltzmann_j_per_k", ch.boltzmann},
                     {"noise_temp_k", ch.noise_temp_k},
                     {"carrier_freq_hz", ch.carrier_freq_hz},
                     {"light_speed_mps", ch.light_speed_mps}};
  const PropulsionParams& pp = s.propulsion;
  root["propulsion"] = {
      {"blade_power_w", pp.blade_power_w},
      {"induced_power_w", pp.induced_power_w},
      {"tip_speed_mps", pp.tip_speed_mps},
      {"drag_ratio", pp.drag_ratio},
      {"air_density_kg_m3", pp.air_density},
      {"rotor_solidity", pp.rotor_solidity},
      {"rotor_area_m2", pp.rotor_area_m2},
      {"mean_rotor_velocity_mps", pp.mean_rotor_velocity},
      {"induced_form", pp.induced_form == InducedPowerForm::kAsPrinted ? "as_printed" : "standard"}};
  return root.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str());
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  out << scenario_to_json(config);
}

std::string assumed_defaults_json() {
  using namespace defaults;
  json root;
  root["note"] = "assumed values, not stated by the model description";
  root["gu"] = {{"cpu_cycles_per_bit", kGuCyclesPerBit},
                {"local_cpu_hz", kGuCpuHz},
                {"capacitance", kGuCapacitance},
                {"tx_power_dbm", kGuTxPowerDbm},
                {"energy_budget_j", kGuEnergyBudget}};
  root["uav"] = {{"cpu_hz", kUavCpuHz},
                 {"capacitance", kUavCapacitance},
                 {"tx_power_dbm", kUavTxPowerDbm},
                 {"energy_budget_j", kUavEnergyBudget}};
  root["hap"] = {{"cpu_hz", kHapCpuHz},
                 {"capacitance", kHapCapacitance},
                 {"energy_budget_j", kHapEnergyBudget}};
  root["channel"] = {{"los_a", kLosA},
                     {"los_b_per_deg", kLosB},
                     {"beta0_db", kBeta0Db},
                     {"pathloss_exp", kPathlossExp},
                     {"nlos_atten", kNlosAtten},
                     {"bandwidth_gu_hz", kBandwidthGu},
                     {"noise_power_dbm", kNoiseDbm},
                     {"bandwidth_uh_hz", kBandwidthUh},
                     {"antenna_gain_db", kAntennaGainDb},
                     {"total_loss_db", kTotalLossDb},
                     {"boltzmann_j_per_k", kBoltzmann},
                     {"noise_temp_k", kNoiseTemp},
                     {"carrier_freq_hz", kCarrierFreq},
                     {"light_speed_mps", kLightSpeed}};
  root["propulsion"] = {{"blade_power_w", kBladePower},
                        {"induced_power_w", kInducedPower},
                        {"tip_speed_mps", kTipSpeed},
                        {"drag_ratio", kDragRatio},
                        {"air_density_kg_m3", kAirDensity},
                        {"rotor_solidity", kRotorSolidity},
                        {"rotor_area_m2", kRotorArea},
                        {"mean_rotor_velocity_mps", kMeanRotorVelocity},
                        {"induced_form", "as_printed"}};
  return root.dump(2) + "\n";
}

}  // namespace drcoto
