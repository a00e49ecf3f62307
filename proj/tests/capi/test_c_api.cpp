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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "edrlab/edrlab.h"

namespace {

// Interleaved (re, im) row-major buffers.
std::vector<double> real_matrix(std::initializer_list<double> entries) {
    std::vector<double> out;
    for (double x : entries) {
        out.push_back(x);
        out.push_back(0.0);
    }
    return out;
}

std::vector<double> cnot_coupling() {
    return real_matrix({1, 0, 0, 0,  //
                        0, 1, 0, 0,  //
                        0, 0, 0, 1,  //
                        0, 0, 1, 0});
}

struct Process {
    edrlab_process *p = nullptr;
    Process() {
        const auto xi = real_matrix({1, 0});
        const auto u = cnot_coupling();
        const auto z = real_matrix({1, 0, 0, -1});
        EXPECT_EQ(edrlab_process_new(2, 2, xi.data(), u.data(), z.data(), &p), EDRLAB_OK) << edrlab_last_error();
    }
    ~Process() { edrlab_process_free(p); }
};

const std::vector<double> kZ = real_matrix({1, 0, 0, -1});
const std::vector<double> kX = real_matrix({0, 1, 1, 0});
// |+i><+i| = (1/2) [[1, -i], [i, 1]].
const std::vector<double> kPlusI = {0.5, 0, 0, -0.5, 0, 0.5, 0.5, 0};

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STREQ(edrlab_version(), "0.1.0");
    EXPECT_STREQ(edrlab_status_name(EDRLAB_OK), "ok");
    EXPECT_STRNE(edrlab_status_name(EDRLAB_ERR_IO), edrlab_status_name(EDRLAB_ERR_CONFIG));
}

TEST(CApi, CnotRmsQuantities) {
    Process mp;
    double eps = -1, eta = -1;
    ASSERT_EQ(edrlab_rms_error(mp.p, kZ.data(), kPlusI.data(), &eps), EDRLAB_OK);
    ASSERT_EQ(edrlab_rms_disturbance(mp.p, kX.data(), kPlusI.data(), &eta), EDRLAB_OK);
    EXPECT_NEAR(eps, 0.0, 1e-12);
    EXPECT_NEAR(eta, std::sqrt(2.0), 1e-12);

    edrlab_edr_report r;
    ASSERT_EQ(edrlab_evaluate_edr(mp.p, kZ.data(), kX.data(), kPlusI.data(), 1, &r), EDRLAB_OK);
    EXPECT_FALSE(r.heisenberg.satisfied);
    EXPECT_TRUE(r.ozawa.satisfied);
    EXPECT_TRUE(r.universal.satisfied);
    EXPECT_TRUE(r.has_locally_uniform);
    EXPECT_NEAR(r.eta_bar, std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(r.has_error_free);
    EXPECT_NEAR(r.commutator_bound, 1.0, 1e-12);
}

TEST(CApi, InvalidInputsReportErrors) {
    edrlab_process *p = nullptr;
    const auto xi = real_matrix({1, 1});
    const auto u = cnot_coupling();
    EXPECT_EQ(edrlab_process_new(2, 2, xi.data(), u.data(), kZ.data(), &p), EDRLAB_ERR_VALIDATION);
    EXPECT_EQ(p, nullptr);
    EXPECT_GT(std::strlen(edrlab_last_error()), 0u);
    EXPECT_EQ(edrlab_process_new(2, 2, nullptr, u.data(), kZ.data(), &p), EDRLAB_ERR_INVALID_ARGUMENT);

    const auto bad_rho = real_matrix({1, 0, 0, 1});  // trace 2
    Process mp;
    double eps = 0;
    EXPECT_EQ(edrlab_rms_error(mp.p, kZ.data(), bad_rho.data(), &eps), EDRLAB_ERR_VALIDATION);
}

TEST(CApi, GaussianModels) {
    edrlab_mode object{0, 0, 0.5, 0.5, 0};
    edrlab_mode probe{0, 0, 0.25, 1.0, 0};
    edrlab_gaussian *g = nullptr;
    ASSERT_EQ(edrlab_gaussian_new(&object, &probe, 1.0, &g), EDRLAB_OK);
    edrlab_edr_report r;
    ASSERT_EQ(edrlab_cv_edr(EDRLAB_CV_VON_NEUMANN, g, &r), EDRLAB_OK);
    EXPECT_NEAR(r.epsilon_A, 0.5, 1e-14);
    EXPECT_NEAR(r.eta_B, 1.0, 1e-14);
    ASSERT_EQ(edrlab_cv_edr(EDRLAB_CV_OZAWA_1988, g, &r), EDRLAB_OK);
    EXPECT_EQ(r.epsilon_A, 0.0);
    EXPECT_FALSE(r.heisenberg.satisfied);
    edrlab_gaussian_free(g);

    edrlab_mode bad{0, 0, 0.1, 0.1, 0};
    EXPECT_EQ(edrlab_gaussian_new(&bad, &probe, 1.0, &g), EDRLAB_ERR_VALIDATION);

    double s[16];
    ASSERT_EQ(edrlab_cv_transfer(EDRLAB_CV_OZAWA_1988, 1.0, s), EDRLAB_OK);
    const double expected[16] = {1, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 1};
    for (int i = 0; i < 16; ++i) {
        EXPECT_NEAR(s[i], expected[i], 1e-12) << i;
    }
    EXPECT_EQ(edrlab_cv_transfer(EDRLAB_CV_OZAWA_1988, 2.0, s), EDRLAB_ERR_INVALID_ARGUMENT);
}

TEST(CApi, RunScenarioAndPlot) {
    const auto dir = std::filesystem::temp_directory_path() / "edrlab-capi";
    std::filesystem::remove_all(dir);
    edrlab_config *cfg = nullptr;
    ASSERT_EQ(edrlab_config_new(&cfg), EDRLAB_OK);
    ASSERT_EQ(edrlab_config_set(cfg, "points", "11"), EDRLAB_OK);
    edrlab_result *res = nullptr;
    ASSERT_EQ(edrlab_run("ozawa-tau-sweep", cfg, dir.c_str(), &res), EDRLAB_OK) << edrlab_last_error();
    EXPECT_TRUE(edrlab_result_passed(res));
    ASSERT_GT(edrlab_result_check_count(res), 0u);
    const char *name = nullptr;
    int criterion = 0, passed = 0;
    ASSERT_EQ(edrlab_result_check(res, 0, &name, &criterion, &passed), EDRLAB_OK);
    EXPECT_EQ(criterion, 3);
    EXPECT_TRUE(passed);
    EXPECT_EQ(edrlab_result_check(res, 1000, &name, &criterion, &passed), EDRLAB_ERR_INVALID_ARGUMENT);
    EXPECT_TRUE(std::filesystem::exists(edrlab_result_json_path(res)));
    EXPECT_TRUE(std::filesystem::exists(edrlab_result_csv_path(res)));
    const auto plot = dir / "plot.csv";
    EXPECT_EQ(edrlab_emit_plot_data(edrlab_result_json_path(res), plot.c_str()), EDRLAB_OK);
    EXPECT_TRUE(std::filesystem::exists(plot));
    edrlab_result_free(res);

    EXPECT_EQ(edrlab_run("nope", cfg, dir.c_str(), &res), EDRLAB_ERR_UNKNOWN_SCENARIO);
    ASSERT_EQ(edrlab_config_set(cfg, "bogus", "1"), EDRLAB_OK);
    EXPECT_EQ(edrlab_run("ozawa-tau-sweep", cfg, dir.c_str(), &res), EDRLAB_ERR_CONFIG);
    EXPECT_EQ(edrlab_config_load(cfg, "/nonexistent.ini"), EDRLAB_ERR_IO);
    EXPECT_EQ(edrlab_emit_plot_data("/nonexistent.json", plot.c_str()), EDRLAB_ERR_IO);
    edrlab_config_free(cfg);
    std::filesystem::remove_all(dir);
}

TEST(CApi, ScenarioCatalog) {
    ASSERT_EQ(edrlab_scenario_count(), 10u);
    EXPECT_EQ(edrlab_scenario_name(10), nullptr);
    for (size_t i = 0; i < edrlab_scenario_count(); ++i) {
        EXPECT_NE(edrlab_scenario_name(i), nullptr);
        EXPECT_NE(edrlab_scenario_summary(i), nullptr);
    }
}

}  // namespace
