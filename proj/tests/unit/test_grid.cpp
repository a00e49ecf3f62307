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

#include "edrlab/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "test_support.hpp"

namespace edrlab::cv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GridFunction gaussian_on(const UniformGrid &g, double mean, double var) { return GridFunction::gaussian(g, mean, var); }

TEST(Grid, Spanning) {
    const auto g = UniformGrid::spanning(-2.0, 2.0, 5);
    EXPECT_DOUBLE_EQ(g.spacing, 1.0);
    EXPECT_DOUBLE_EQ(g.point(0), -2.0);
    EXPECT_DOUBLE_EQ(g.end(), 2.0);
    EXPECT_EDR_ERROR(UniformGrid::spanning(1.0, 0.0, 5), ErrorKind::InvalidArgument);
}

TEST(Grid, GaussianIsNormalized) {
    const auto psi = gaussian_on(UniformGrid::spanning(-12, 12, 1001), 0.5, 1.0);
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12);
}

TEST(Outcome, WholeLineAndHalfLine) {
    const auto g = UniformGrid::spanning(-15, 15, 1501);
    const auto psi = gaussian_on(g, 0.0, 1.0);
    const auto xi = gaussian_on(g, 0.0, 1.0);
    EXPECT_NEAR(outcome_distribution(psi, xi, -kInf, kInf), 1.0, 1e-8);
    EXPECT_NEAR(outcome_distribution(psi, xi, -kInf, 0.0), 0.5, 1e-8);
}

TEST(Outcome, MomentsAddUnderConvolution) {
    const auto g = UniformGrid::spanning(-15, 15, 2049);
    const auto d = von_neumann_outcome_distribution(gaussian_on(g, 0.5, 1.0), gaussian_on(g, 0.0, 1.0));
    EXPECT_NEAR(d.total(), 1.0, 1e-8);
    EXPECT_NEAR(d.mean(), 0.5, 1e-6);
    EXPECT_NEAR(d.variance(), 2.0, 1e-6);
}

// Normal CDF reference for the convolved density N(0.5, 1 + var_xi).
double normal_cdf(double x, double mean, double var) {
    return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var));
}

TEST(Outcome, IntervalProbabilitiesMatchNormalCdf) {
    const auto g = UniformGrid::spanning(-15, 15, 4097);
    const auto d = von_neumann_outcome_distribution(gaussian_on(g, 0.5, 1.0), gaussian_on(g, 0.0, 0.5));
    for (auto [a, b] : {std::pair{-1.0, 0.0}, {0.0, 2.0}, {-0.3, 0.7}, {1.5, 4.0}}) {
        EXPECT_NEAR(d.probability(a, b), normal_cdf(b, 0.5, 1.5) - normal_cdf(a, 0.5, 1.5), 1e-5);
    }
}

TEST(Outcome, NarrowProbeApproachesBornRule) {
    const auto g = UniformGrid::spanning(-10, 10, 8001);
    const auto psi = gaussian_on(g, 0.5, 1.0);
    const auto xi = gaussian_on(g, 0.0, 1e-4);
    const double born = normal_cdf(1.0, 0.5, 1.0) - normal_cdf(0.0, 0.5, 1.0);
    EXPECT_NEAR(outcome_distribution(psi, xi, 0.0, 1.0), born, 1e-4);
}

TEST(Outcome, RejectsMismatchedGridsAndUnnormalizedInput) {
    const auto psi = gaussian_on(UniformGrid::spanning(-5, 5, 101), 0.0, 1.0);
    const auto xi = gaussian_on(UniformGrid::spanning(-5, 5, 201), 0.0, 1.0);
    EXPECT_EDR_ERROR(von_neumann_outcome_distribution(psi, xi), ErrorKind::DimensionMismatch);
    auto bad = psi;
    for (auto &v : bad.values) {
        v *= 2.0;
    }
    EXPECT_EDR_ERROR(von_neumann_outcome_distribution(bad, psi), ErrorKind::Validation);
}

}  // namespace
}  // namespace edrlab::cv
