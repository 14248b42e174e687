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

#include "drcoto/scenario.h"

namespace drcoto {

struct ScenarioConfig {
  Scenario scenario;
  std::vector<double> sample_space_bits;
};

// JSON with unit-suffixed keys. Unknown keys and missing sections raise
// Error(kInvalidInput); config units are converted to SI here and nowhere else.
ScenarioConfig parse_scenario_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);

ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);

// Defaults not stated by the model description, in config units.
std::string assumed_defaults_json();

}  // namespace drcoto
