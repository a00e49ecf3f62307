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

#include "edrlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edrlab/error.hpp"

namespace edrlab {

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string format_cell(const Cell &cell) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return csv_field(v);
            }
        },
        cell);
}

Json cell_json(const Cell &cell) {
    return std::visit([](const auto &v) { return Json(v); }, cell);
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
    }
}

std::string json_scalar_text(const Json &v) {
    if (v.is_string()) {
        return csv_field(v.get<std::string>());
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "1" : "0";
    }
    if (v.is_number_integer()) {
        return v.dump();
    }
    if (v.is_number()) {
        return format_number(v.get<double>());
    }
    return "";
}

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw Error(ErrorKind::DimensionMismatch, "table row has " + std::to_string(row.size()) +
                                                      " cells for " +
                                                      std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

void ScenarioReport::check(std::string name, int criterion, bool passed, Json detail) {
    checks.push_back(Check{std::move(name), criterion, passed, std::move(detail)});
}

bool ScenarioReport::passed() const {
    for (const Check &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> ScenarioReport::failures() const {
    std::vector<std::string> out;
    for (const Check &c : checks) {
        if (!c.passed) {
            out.push_back(c.name);
        }
    }
    return out;
}

Json to_json(const RelationCheck &check) {
    return Json{{"lhs", check.lhs}, {"bound", check.bound}, {"satisfied", check.satisfied}};
}

Json to_json(const EdrReport &r) {
    Json j{{"label", r.label},
           {"epsilon_A", r.epsilon_A},
           {"eta_B", r.eta_B},
           {"sigma_A", r.sigma_A},
           {"sigma_B", r.sigma_B},
           {"correlation_term", r.correlation_term},
           {"commutator_bound", r.commutator_bound},
           {"lhs_heisenberg", r.heisenberg.lhs},
           {"lhs_universal", r.universal.lhs},
           {"lhs_ozawa", r.ozawa.lhs},
           {"heisenberg", to_json(r.heisenberg)},
           {"universal", to_json(r.universal)},
           {"ozawa", to_json(r.ozawa)}};
    if (r.epsilon_bar) {
        j["epsilon_bar"] = *r.epsilon_bar;
    }
    if (r.eta_bar) {
        j["eta_bar"] = *r.eta_bar;
    }
    if (r.locally_uniform) {
        j["locally_uniform"] = to_json(*r.locally_uniform);
    }
    if (r.error_free) {
        j["error_free"] = to_json(*r.error_free);
    }
    if (r.non_disturbing) {
        j["non_disturbing"] = to_json(*r.non_disturbing);
    }
    return j;
}

Json to_json(const Tolerances &t) {
    return Json{{"hermit_tol", t.hermit_tol},
                {"trace_tol", t.trace_tol},
                {"positivity_tol", t.positivity_tol},
                {"unitary_tol", t.unitary_tol},
                {"unit_norm_tol", t.unit_norm_tol},
                {"degeneracy_tol", t.degeneracy_tol},
                {"projector_tol", t.projector_tol},
                {"variance_clamp_tol", t.variance_clamp_tol},
                {"value_match_tol", t.value_match_tol},
                {"commutator_tol", t.commutator_tol},
                {"support_tol", t.support_tol},
                {"rank_tol", t.rank_tol},
                {"diagonal_mass_tol", t.diagonal_mass_tol},
                {"zero_error_tol", t.zero_error_tol},
                {"theorem_tol", t.theorem_tol},
                {"heisenberg_tol", t.heisenberg_tol},
                {"robertson_tol", t.robertson_tol},
                {"symplectic_tol", t.symplectic_tol},
                {"rescale_norm", t.rescale_norm}};
}

Json ScenarioReport::to_json(const Tolerances &tol) const {
    Json checks_json = Json::array();
    for (const Check &c : checks) {
        checks_json.push_back(Json{{"name", c.name},
                                   {"criterion", c.criterion},
                                   {"passed", c.passed},
                                   {"detail", c.detail}});
    }
    Json rows = Json::array();
    for (const auto &row : table.rows) {
        Json r = Json::array();
        for (const Cell &cell : row) {
            r.push_back(cell_json(cell));
        }
        rows.push_back(std::move(r));
    }
    return Json{{"scenario", scenario},
                {"seed", seed},
                {"passed", passed()},
                {"failures", failures()},
                {"inputs", inputs},
                {"tolerances", edrlab::to_json(tol)},
                {"checks", checks_json},
                {"results", results},
                {"table", Json{{"parameter", table.parameter},
                               {"columns", table.columns},
                               {"rows", rows}}}};
}

std::string ScenarioReport::to_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << csv_field(table.columns[c]);
    }
    out << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_cell(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

ReportPaths write_report(const ScenarioReport &report, const std::string &dir,
                         const Tolerances &tol) {
    std::filesystem::path base(dir.empty() ? "." : dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) {
        throw Error(ErrorKind::Io, "cannot create output directory '" + base.string() +
                                       "': " + ec.message());
    }
    ReportPaths paths{(base / (report.scenario + ".json")).string(),
                      (base / (report.scenario + ".csv")).string()};
    write_file(paths.json, report.to_json(tol).dump(2) + "\n");
    write_file(paths.csv, report.to_csv());
    return paths;
}

std::string plot_data(const Json &report) {
    std::ostringstream out;
    out << "scenario,parameter,quantity,value\n";
    const std::string scenario = csv_field(report.value("scenario", std::string()));
    if (!report.contains("table")) {
        return out.str();
    }
    const Json &table = report["table"];
    const std::string parameter = table.value("parameter", std::string());
    const Json &columns = table.value("columns", Json::array());
    std::size_t key = columns.size();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == parameter) {
            key = c;
        }
    }
    for (const Json &row : table.value("rows", Json::array())) {
        std::string param_value = key < row.size() ? json_scalar_text(row[key]) : "";
        for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c) {
            const Json &v = row[c];
            if (c == key || !(v.is_number() || v.is_boolean())) {
                continue;
            }
            out << scenario << ',' << param_value << ',' << csv_field(columns[c].get<std::string>())
                << ',' << json_scalar_text(v) << '\n';
        }
    }
    return out.str();
}

void emit_plot_data(const std::string &report_path, const std::string &csv_path) {
    std::ifstream in(report_path);
    if (!in) {
        throw Error(ErrorKind::Io, "report '" + report_path + "' does not exist");
    }
    Json report;
    try {
        report = Json::parse(in);
    } catch (const Json::exception &e) {
        throw Error(ErrorKind::Io, "report '" + report_path + "' is not valid JSON: " + e.what());
    }
    write_file(csv_path, plot_data(report));
}

}  // namespace edrlab
