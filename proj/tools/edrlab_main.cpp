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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edrlab/edrlab.h"

namespace {

constexpr int kAssertionFailed = 1;
constexpr int kError = 2;

int fail(const char *what, edrlab_status status) {
    std::cerr << "edrlab: " << what << ": " << edrlab_status_name(status) << ": " << edrlab_last_error()
              << "\n";
    return kError;
}

// Turns trailing `--key value` / `--key=value` tokens into config overrides.
bool collect_overrides(const std::vector<std::string> &extras,
                       std::vector<std::pair<std::string, std::string>> &out, std::string &problem) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string &tok = extras[i];
        if (tok.rfind("--", 0) != 0 || tok.size() < 3) {
            problem = "unexpected argument '" + tok + "'";
            return false;
        }
        std::string key = tok.substr(2);
        auto eq = key.find('=');
        if (eq != std::string::npos) {
            out.emplace_back(key.substr(0, eq), key.substr(eq + 1));
            continue;
        }
        if (i + 1 >= extras.size()) {
            problem = "option '" + tok + "' needs a value";
            return false;
        }
        out.emplace_back(key, extras[++i]);
    }
    return true;
}

int run(const std::string &scenario, const std::string &config_path, const std::vector<std::pair<std::string, std::string>> &overrides,
        const std::string &out_dir) {
    edrlab_config *cfg = nullptr;
    if (edrlab_status s = edrlab_config_new(&cfg); s != EDRLAB_OK) {
        return fail("config", s);
    }
    auto cleanup = [&] { edrlab_config_free(cfg); };
    if (!config_path.empty()) {
        if (edrlab_status s = edrlab_config_load(cfg, config_path.c_str()); s != EDRLAB_OK) {
            cleanup();
            return fail("config", s);
        }
    }
    for (const auto &[k, v] : overrides) {
        if (edrlab_status s = edrlab_config_set(cfg, k.c_str(), v.c_str()); s != EDRLAB_OK) {
            cleanup();
            return fail("config", s);
        }
    }
    edrlab_result *result = nullptr;
    edrlab_status s = edrlab_run(scenario.c_str(), cfg, out_dir.c_str(), &result);
    cleanup();
    if (s != EDRLAB_OK) {
        return fail(scenario.c_str(), s);
    }
    const std::size_t n = edrlab_result_check_count(result);
    for (std::size_t i = 0; i < n; ++i) {
        const char *name = nullptr;
        int criterion = 0, passed = 0;
        edrlab_result_check(result, i, &name, &criterion, &passed);
        std::printf("%s  [%d] %s\n", passed ? "PASS" : "FAIL", criterion, name);
    }
    std::printf("report: %s\ntable:  %s\n", edrlab_result_json_path(result), edrlab_result_csv_path(result));
    const bool ok = edrlab_result_passed(result) != 0;
    if (!ok) {
        std::fprintf(stderr, "edrlab: %s: assertions failed; see \"failures\" in %s\n", scenario.c_str(),
                     edrlab_result_json_path(result));
    }
    edrlab_result_free(result);
    return ok ? 0 : kAssertionFailed;
}

std::string default_out_dir() {
    const char *env = std::getenv("EDRLAB_OUT");
    return env && *env ? env : "edrlab-out";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"edrlab: error-disturbance relations in measurement models"};
    app.set_version_flag("--version", edrlab_version());
    app.require_subcommand(1);

    std::string scenario, config_path, out_dir;
    std::string seed, jobs;
    auto *run_cmd = app.add_subcommand("run", "Run a scenario and write <out>/<scenario>.json and .csv");
    run_cmd->add_option("scenario", scenario, "Scenario name (see `edrlab list`)")->required();
    run_cmd->add_option("--config", config_path, "Config file with key = value lines");
    run_cmd->add_option("--seed", seed, "Base seed");
    run_cmd->add_option("--jobs", jobs, "Worker threads for independent sweep points (0: all cores)");
    run_cmd->add_option("--out", out_dir, "Output directory (default: $EDRLAB_OUT or ./edrlab-out)");
    run_cmd->allow_extras();
    run_cmd->footer("Any other `--key value` pair overrides the config file.");

    app.add_subcommand("list", "List scenarios");

    std::string report_path, plot_out;
    auto *plot_cmd = app.add_subcommand("plot", "Write the long-format plot table of a report");
    plot_cmd->add_option("report", report_path, "Report JSON written by `edrlab run`")->required();
    plot_cmd->add_option("--out", plot_out, "Output CSV (default: <report>.plot.csv)");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("list")) {
        for (std::size_t i = 0; i < edrlab_scenario_count(); ++i) {
            std::printf("%-20s %s\n", edrlab_scenario_name(i), edrlab_scenario_summary(i));
        }
        return 0;
    }
    if (app.got_subcommand("plot")) {
        if (plot_out.empty()) {
            plot_out = report_path;
            if (plot_out.size() > 5 && plot_out.compare(plot_out.size() - 5, 5, ".json") == 0) {
                plot_out.resize(plot_out.size() - 5);
            }
            plot_out += ".plot.csv";
        }
        if (edrlab_status s = edrlab_emit_plot_data(report_path.c_str(), plot_out.c_str()); s != EDRLAB_OK) {
            return fail("plot", s);
        }
        std::printf("%s\n", plot_out.c_str());
        return 0;
    }

    std::vector<std::pair<std::string, std::string>> overrides;
    std::string problem;
    if (!collect_overrides(run_cmd->remaining(), overrides, problem)) {
        std::cerr << "edrlab: " << problem << "\n";
        return kError;
    }
    if (!seed.empty()) {
        overrides.emplace_back("seed", seed);
    }
    if (!jobs.empty()) {
        overrides.emplace_back("jobs", jobs);
    }
    return run(scenario, config_path, overrides, out_dir.empty() ? default_out_dir() : out_dir);
}
