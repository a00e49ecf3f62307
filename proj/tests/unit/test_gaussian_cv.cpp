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

#include "edrlab/gaussian_cv.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "edrlab/random_models.hpp"
#include "test_support.hpp"

namespace edrlab::cv {
namespace {

// Generator of dx/dt = J h x for H = (1/2) x^T h x, written from the
// Hamiltonians term by term: a term a * x_i x_j (i != j) contributes
// h_ij = h_ji = a.
Mat4 hamiltonian_matrix(CvModelKind kind) {
    Mat4 h = Mat4::Zero();
    auto put = [&](int i, int j, double a) {
        h(i, j) += a;
        h(j, i) += a;
    };
    if (kind == CvModelKind::VonNeumann) {
        put(kQ, kPbar, 1.0);  // H = K Q Pbar
    } else {
        const double c = std::numbers::pi / (3.0 * std::sqrt(3.0));
        put(kQ, kPbar, 2.0 * c);
        put(kP, kQbar, -2.0 * c);
        put(kQ, kP, c);
        put(kQbar, kPbar, -c);
    }
    return h;
}

Mat4 j_form() {
    Mat4 j = Mat4::Zero();
    j(kQ, kP) = 1.0;
    j(kP, kQ) = -1.0;
    j(kQbar, kPbar) = 1.0;
    j(kPbar, kQbar) = -1.0;
    return j;
}

// Truncated Taylor series with scaling and squaring.
Mat4 series_exp(const Mat4 &a) {
    Mat4 scaled = a / 1024.0;
    Mat4 term = Mat4::Identity(), sum = Mat4::Identity();
    for (int k = 1; k < 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < 10; ++s) {
        sum = sum * sum;
    }
    return sum;
}

Mat4 expected_flow(CvModelKind kind, double tau) { return series_exp(tau * j_form() * hamiltonian_matrix(kind)); }

TEST(Transfer, VonNeumannRows) {
    const auto s = von_neumann_transfer();
    EXPECT_EQ(s.row(kQbar), Row4(1, 0, 1, 0));
    EXPECT_EQ(s.row(kP), Row4(0, 1, 0, -1));
    EXPECT_EQ(s.row(kQ), Row4(1, 0, 0, 0));
    EXPECT_EQ(s.row(kPbar), Row4(0, 0, 0, 1));
    EXPECT_EQ(s.symplectic_residual(), 0.0);
}

TEST(Transfer, OzawaEndpoints) {
    EXPECT_EQ(ozawa_transfer(0.0).matrix, Mat4::Identity());
    const auto s = ozawa_transfer(1.0);
    EXPECT_EQ(s.row(kQbar), Row4(1, 0, 0, 0));
    EXPECT_EQ(s.row(kP), Row4(0, 0, 0, -1));
    EXPECT_EQ(s.row(kQ), Row4(1, 0, -1, 0));
    EXPECT_EQ(s.row(kPbar), Row4(0, 1, 0, 1));
}

TEST(Transfer, OzawaPositionRowClosedForm) {
    const double k = 2.0 / std::sqrt(3.0);
    for (double tau : {0.1, 0.37, 0.5, 0.9}) {
        const auto s = ozawa_transfer(tau);
        EXPECT_NEAR(s.matrix(kQ, kQ), k * std::sin((1.0 + tau) * std::numbers::pi / 3.0), 1e-14);
        EXPECT_NEAR(s.matrix(kQ, kQbar), -k * std::sin(tau * std::numbers::pi / 3.0), 1e-14);
    }
}

TEST(Transfer, ClosedFormsSolveTheHeisenbergEquations) {
    for (auto kind : {CvModelKind::VonNeumann, CvModelKind::Ozawa1988}) {
        for (int i = 0; i <= 20; ++i) {
            const double tau = i / 20.0;
            const Mat4 diff = transfer(kind, tau).matrix - expected_flow(kind, tau);
            EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-12) << model_name(kind) << " tau " << tau;
            EXPECT_LE(transfer(kind, tau).symplectic_residual(), 1e-12);
        }
    }
}

TEST(Transfer, ExponentialCheckAgrees) {
    EXPECT_LE((matrix_exponential_check(CvModelKind::Ozawa1988, 1.0).matrix - ozawa_transfer(1.0).matrix)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
    EXPECT_LE(matrix_exponential_check(CvModelKind::Ozawa1988, 0.5).symplectic_residual(), 1e-12);
    for (double tau : {0.0, 0.3, 1.0}) {
        const auto s = matrix_exponential_check(CvModelKind::VonNeumann, tau);
        EXPECT_NEAR(s.matrix(kQbar, kQ), tau, 1e-14);
        EXPECT_NEAR(s.matrix(kQbar, kQbar), 1.0, 1e-14);
    }
}

TEST(Transfer, RejectsOutOfRangeTime) {
    EXPECT_EDR_ERROR(ozawa_transfer(1.5), ErrorKind::InvalidArgument);
    EXPECT_EDR_ERROR(ozawa_transfer(-0.1), ErrorKind::InvalidArgument);
}

TEST(State, RobertsonConditionEnforced) {
    ModeMoments bad;
    bad.var_q = 0.1;
    bad.var_p = 0.1;
    EXPECT_EDR_ERROR(GaussianState4::product(bad, ModeMoments{}), ErrorKind::Validation);
    ModeMoments correlated;
    correlated.var_q = 1.0;
    correlated.var_p = 1.0;
    correlated.cov_qp = 0.9;  // 1 - 0.81 < 0.25
    EXPECT_EDR_ERROR(GaussianState4::product(correlated, ModeMoments{}), ErrorKind::Validation);
    Mat4 cov = Mat4::Identity();
    cov(kQ, kQbar) = cov(kQbar, kQ) = 0.1;
    EXPECT_EDR_ERROR(GaussianState4(Vec4::Zero(), cov), ErrorKind::Validation);
    EXPECT_EDR_ERROR(GaussianState4::product(ModeMoments{}, ModeMoments{}, -1.0), ErrorKind::InvalidArgument);
}

GaussianState4 probe_state(double var_qbar, double mean_qbar = 0.0) {
    return GaussianState4::product(ModeMoments::minimal(0.5), ModeMoments::minimal(var_qbar, 1.0, mean_qbar));
}

TEST(Rms, VonNeumannExamples) {
    EXPECT_NEAR(rms_error_q(CvModelKind::VonNeumann, probe_state(0.25)), 0.5, 1e-15);
    EXPECT_NEAR(rms_error_q(CvModelKind::VonNeumann, probe_state(1e-12, 1.0)), 1.0, 1e-9);
    EXPECT_NEAR(rms_disturbance_p(CvModelKind::VonNeumann, probe_state(0.25)), 1.0, 1e-15);
}

TEST(Rms, OzawaExamples) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        EXPECT_EQ(rms_error_q(CvModelKind::Ozawa1988, random_gaussian_state(rng)), 0.0);
    }
    const auto s = GaussianState4::product(ModeMoments::minimal(0.25), ModeMoments::minimal(0.25));
    EXPECT_NEAR(rms_disturbance_p(CvModelKind::Ozawa1988, s), std::sqrt(2.0), 1e-15);
}

// eps^2 = <(c.x)^2> with c = row Qbar - e_Q, expanded by hand.
TEST(Rms, MatchesMomentExpansionOnRandomStates) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const auto s = random_gaussian_state(rng);
        const Vec4 &m = s.mean();
        const Mat4 &c = s.cov();
        const double eps_vn = std::sqrt(c(kQbar, kQbar) + m(kQbar) * m(kQbar));
        const double eta_vn = std::sqrt(c(kPbar, kPbar) + m(kPbar) * m(kPbar));
        const double eta_oz = std::sqrt(c(kP, kP) + c(kPbar, kPbar) + std::pow(m(kP) + m(kPbar), 2));
        EXPECT_NEAR(rms_error_q(CvModelKind::VonNeumann, s), eps_vn, 1e-12);
        EXPECT_NEAR(rms_disturbance_p(CvModelKind::VonNeumann, s), eta_vn, 1e-12);
        EXPECT_NEAR(rms_disturbance_p(CvModelKind::Ozawa1988, s), eta_oz, 1e-12);
    }
}

TEST(Report, Examples) {
    const auto vn = edr_product_report(CvModelKind::VonNeumann, probe_state(0.7));
    EXPECT_NEAR(vn.epsilon_A * vn.eta_B, 0.5, 1e-12);
    EXPECT_TRUE(vn.heisenberg.satisfied);
    EXPECT_DOUBLE_EQ(vn.commutator_bound, 0.5);

    ModeMoments wide;
    wide.var_q = 1.0;
    wide.var_p = 1.0;
    const auto loose = edr_product_report(CvModelKind::VonNeumann,
                                          GaussianState4::product(ModeMoments::minimal(0.5), wide));
    EXPECT_NEAR(loose.heisenberg.lhs, 1.0, 1e-15);
    EXPECT_TRUE(loose.heisenberg.satisfied);

    const auto oz = edr_product_report(CvModelKind::Ozawa1988, probe_state(0.5));
    EXPECT_EQ(oz.heisenberg.lhs, 0.0);
    EXPECT_FALSE(oz.heisenberg.satisfied);
    EXPECT_TRUE(oz.ozawa.satisfied);
    EXPECT_TRUE(oz.universal.satisfied);
    // eps = 0, so the three-term side reduces to sigma(Q) eta(P).
    EXPECT_NEAR(oz.ozawa.lhs, oz.sigma_A * oz.eta_B, 1e-15);
    EXPECT_GE(oz.ozawa.lhs, 0.5);
    ASSERT_TRUE(oz.error_free.has_value());
    EXPECT_TRUE(oz.error_free->satisfied);
}

TEST(Kennard, Examples) {
    const auto eq = kennard_check(0.5, 0.5);
    EXPECT_NEAR(eq.product, 0.5, 1e-15);
    EXPECT_TRUE(eq.satisfied);
    EXPECT_TRUE(eq.equality);
    const auto loose = kennard_check(1.0, 1.0);
    EXPECT_NEAR(loose.product, 1.0, 1e-15);
    EXPECT_FALSE(loose.equality);
    EXPECT_EDR_ERROR(kennard_check(0.1, 0.1), ErrorKind::Validation);
}

TEST(ArthursKelly, Examples) {
    const auto s = GaussianState4::product(ModeMoments::minimal(0.5), ModeMoments::minimal(0.5));
    const auto r = arthurs_kelly_check(s);
    EXPECT_NEAR(r.meters.product, 1.0, 1e-12);
    EXPECT_TRUE(r.meters.equality);
    EXPECT_NEAR(r.errors.product, 0.5, 1e-12);
    EXPECT_TRUE(r.errors.equality);

    ModeMoments squeezed;
    squeezed.var_q = 0.1;
    squeezed.var_p = 2.5;
    const auto q = arthurs_kelly_check(GaussianState4::product(squeezed, ModeMoments::minimal(0.5)));
    EXPECT_NEAR(q.meters.product, std::sqrt(0.6 * 3.0), 1e-12);
    EXPECT_TRUE(q.meters.satisfied);

    EXPECT_EDR_ERROR(arthurs_kelly_check(GaussianState4::product(ModeMoments::minimal(0.5),
                                                                 ModeMoments::minimal(0.5, 1.0, 0.2))),
                     ErrorKind::Precondition);
}

TEST(ArthursKelly, RandomUnbiasedStatesObeyBothBounds) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        const auto r = arthurs_kelly_check(random_gaussian_state(rng, 1.0, true));
        EXPECT_TRUE(r.meters.satisfied);
        EXPECT_TRUE(r.errors.satisfied);
    }
}

TEST(Hbar, ScalesTheBound) {
    const double hbar = 2.0;
    const auto s = GaussianState4::product(ModeMoments::minimal(1.0, hbar), ModeMoments::minimal(1.0, hbar), hbar);
    const auto r = edr_product_report(CvModelKind::VonNeumann, s);
    EXPECT_NEAR(r.commutator_bound, 1.0, 1e-15);
    EXPECT_NEAR(r.heisenberg.lhs, 1.0, 1e-12);
}

}  // namespace
}  // namespace edrlab::cv
