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

#include "drcoto/drcoto.h"

namespace drcoto {

enum class BaselineMode { kDO, kSO, kRO };

const char* to_string(BaselineMode mode);

// Fixed distribution each baseline optimizes against.
std::vector<Distribution> baseline_distributions(BaselineMode mode, const AmbiguitySet& amb);

SolveReport solve_baseline(BaselineMode mode, const Scenario& scenario, const AmbiguitySet& amb,
                           const SolveOptions& options = {});

}  // namespace drcoto
