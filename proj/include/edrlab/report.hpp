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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "edrlab/edr_report.hpp"
#include "edrlab/tolerances.hpp"

namespace edrlab {

using Json = nlohmann::json;

/// One asserted identity or inequality. `criterion` is the acceptance
/// criterion number the assertion belongs to.
struct Check {
    std::string name;
    int criterion = 0;
    bool passed = false;
    Json detail = Json::object();
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Sweep table: one row per sweep point. `parameter` names the column that
/// indexes the sweep.
struct Table {
    std::string parameter;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

struct ScenarioReport {
    std::string scenario;
    std::uint64_t seed = 0;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Check> checks;
    Table table;

    void check(std::string name, int criterion, bool passed, Json detail = Json::object());
    bool passed() const;
    std::vector<std::string> failures() const;

    Json to_json(const Tolerances &tol) const;
    std::string to_csv() const;
};

Json to_json(const RelationCheck &check);
Json to_json(const EdrReport &report);
Json to_json(const Tolerances &tol);

/// `%.17g`, with nan/inf spelled as in C.
std::string format_number(double x);

struct ReportPaths {
    std::string json;
    std::string csv;
};

/// Writes `<dir>/<scenario>.json` and `<dir>/<scenario>.csv`, creating `dir`.
ReportPaths write_report(const ScenarioReport &report, const std::string &dir,
                         const Tolerances &tol);

/// Long-format plot table `scenario,parameter,quantity,value` built from the
/// sweep table of a JSON report: one line per row and numeric column other
/// than the sweep parameter. Booleans are written as 0/1; text columns are
/// skipped. A report without rows yields the header alone.
std::string plot_data(const Json &report);
/// Reads the report at `report_path` and writes its plot table to `csv_path`.
void emit_plot_data(const std::string &report_path, const std::string &csv_path);

}  // namespace edrlab
