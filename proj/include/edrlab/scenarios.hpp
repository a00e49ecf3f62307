// Copyright 2026 The edrlab Authors
//
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

#include "edrlab/config.hpp"
#include "edrlab/report.hpp"

namespace edrlab {

struct ScenarioInfo {
    std::string name;
    std::string summary;
    /// Config keys the scenario reads, besides `seed` and `jobs`.
    std::vector<std::string> keys;
};

const std::vector<ScenarioInfo> &scenario_catalog();

/// Runs a named scenario. Throws UnknownScenario for an unknown name and
/// Config for keys the scenario does not read or values that fail to parse.
/// `jobs` threads evaluate independent sweep points; the report does not
/// depend on it.
ScenarioReport run_scenario(const std::string &name, const Config &config);

}  // namespace edrlab
