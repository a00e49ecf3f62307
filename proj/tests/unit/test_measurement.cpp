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

#include "edrlab/measurement.hpp"

#include <cmath>
#include <random>

#include "edrlab/qubit_models.hpp"
#include "edrlab/random_models.hpp"
#include "test_support.hpp"

namespace edrlab {
namespace {

using testing::expect_matrix_near;
using testing::kron;

const double kSqrt2 = std::sqrt(2.0);

DensityState pure(const Vector &v) { return DensityState::pure(v); }

Vector basis_vector(Index dim, Index k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return v;
}

MeasuringProcess swap_process() {
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    return MeasuringProcess(2, qubit::ket0(), UnitaryOperator(swap), qubit::pauli_z());
}

// Composite-space quantities built directly from the definitions.
struct Composite {
    Matrix sigma;   // rho (x) |xi><xi|
    Matrix a0;      // A (x) I
    Matrix m_end;   // U^dagger (I (x) M) U
};

Composite composite(const MeasuringProcess &mp, const Matrix &a, const Matrix &rho) {
    const Index d = mp.probe_dim();
    const Matrix &u = mp.coupling().matrix();
    Composite c;
    c.sigma = kron(rho, mp.probe_state() * mp.probe_state().adjoint());
    c.a0 = kron(a, Matrix::Identity(d, d));
    c.m_end = u.adjoint() * kron(Matrix::Identity(mp.system_dim(), mp.system_dim()), mp.meter().matrix()) * u;
    return c;
}

double expansion_error(const MeasuringProcess &mp, const Matrix &a, const Matrix &rho) {
    const auto c = composite(mp, a, rho);
    const Complex v = (c.sigma * (c.m_end * c.m_end + c.a0 * c.a0 - c.m_end * c.a0 - c.a0 * c.m_end)).trace();
    return std::sqrt(std::max(0.0, v.real()));
}

TEST(Process, ValidatesInputs) {
    EXPECT_EDR_ERROR(MeasuringProcess(2, qubit::ket0(), UnitaryOperator::identity(2), qubit::pauli_z()),
                     ErrorKind::DimensionMismatch);
    Vector unnormalized = Vector::Ones(2);
    EXPECT_EDR_ERROR(MeasuringProcess(2, unnormalized, UnitaryOperator::identity(4), qubit::pauli_z()),
                     ErrorKind::Validation);
    EXPECT_EDR_ERROR(rms_error(qubit::cnot_process(), HermitianOperator(identity(3)), DensityState::maximally_mixed(2)),
                     ErrorKind::DimensionMismatch);
}

TEST(Heisenberg, EvolvedOperators) {
    const auto mp = qubit::cnot_process();
    expect_matrix_near(heisenberg_evolve(mp, qubit::pauli_z(), Factor::Probe, Time::End),
                       kron(qubit::pauli_z().matrix(), qubit::pauli_z().matrix()), 1e-14);
    expect_matrix_near(heisenberg_evolve(mp, qubit::pauli_x(), Factor::System, Time::End),
                       kron(qubit::pauli_x().matrix(), qubit::pauli_x().matrix()), 1e-14);
    expect_matrix_near(heisenberg_evolve(mp, qubit::pauli_x(), Factor::System, Time::Start),
                       kron(qubit::pauli_x().matrix(), identity(2)), 0.0);
}

TEST(Rms, CnotExamples) {
    const auto mp = qubit::cnot_process();
    for (const Vector &v : {qubit::ket0(), qubit::ket1(), qubit::ket_plus(), qubit::ket_plus_i()}) {
        EXPECT_NEAR(rms_error(mp, qubit::pauli_z(), pure(v)), 0.0, 1e-12);
        EXPECT_NEAR(rms_disturbance(mp, qubit::pauli_x(), pure(v)), kSqrt2, 1e-12);
        EXPECT_NEAR(rms_disturbance(mp, qubit::pauli_z(), pure(v)), 0.0, 1e-12);
    }
}

TEST(Rms, ZeroMeterErrorIsSecondMoment) {
    const auto mp = qubit::constant_meter_process(0.0);
    EXPECT_NEAR(rms_error(mp, qubit::pauli_z(), pure(qubit::ket_plus())), 1.0, 1e-14);
    std::mt19937_64 rng(3);
    const HermitianOperator a(testing::hermitian(2, rng));
    const DensityState rho(testing::density(2, rng));
    EXPECT_NEAR(rms_error(mp, a, rho), std::sqrt(testing::trace_real(a.matrix() * a.matrix() * rho.matrix())),
                1e-12);
}

TEST(Rms, SwapExample) {
    const auto mp = swap_process();
    EXPECT_NEAR(rms_error(mp, qubit::pauli_z(), pure(qubit::ket_plus())), 0.0, 1e-14);
    EXPECT_NEAR(rms_disturbance(mp, qubit::pauli_z(), pure(qubit::ket0())), 0.0, 1e-14);
    EXPECT_NEAR(rms_disturbance(mp, qubit::pauli_z(), pure(qubit::ket1())), 2.0, 1e-14);
    EXPECT_NEAR(rms_disturbance(mp, qubit::pauli_z(), pure(qubit::ket_plus())), kSqrt2, 1e-14);
}

TEST(Rms, MatchesSecondMomentExpansionOnRandomProcesses) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const Index n = 2 + t % 3, d = 2 + t % 2;
        const auto mp = random_measuring_process(n, d, rng);
        const HermitianOperator a(testing::hermitian(n, rng));
        const DensityState rho(testing::density(n, rng));
        EXPECT_NEAR(rms_error(mp, a, rho), expansion_error(mp, a.matrix(), rho.matrix()), 1e-9);
    }
}

TEST(Observables, MeanNoiseIsPartialExpectation) {
    const auto mp = qubit::cnot_process();
    const auto obs = error_observables(mp, qubit::pauli_z(), qubit::pauli_x());
    expect_matrix_near(obs.mean_noise, Matrix::Zero(2, 2), 1e-14);
    expect_matrix_near(obs.mean_disturbance, -qubit::pauli_x().matrix(), 1e-14);
}

TEST(Joint, CnotCopiesTheZBasis) {
    const auto mp = qubit::cnot_process();
    const HermitianOperator a0(heisenberg_evolve(mp, qubit::pauli_z(), Factor::System, Time::Start));
    const HermitianOperator m(heisenberg_evolve(mp, qubit::pauli_z(), Factor::Probe, Time::End));
    const auto jd = joint_distribution(mp, a0, m, pure(qubit::ket_plus()));
    double total = 0.0;
    for (std::size_t k = 0; k < jd.probs.size(); ++k) {
        total += jd.probs[k];
        if (jd.support[k].first == jd.support[k].second) {
            EXPECT_NEAR(jd.probs[k], 0.5, 1e-14);
        }
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    EXPECT_NEAR(jd.off_diagonal_mass(1e-8), 0.0, 1e-14);

    const HermitianOperator x0(heisenberg_evolve(mp, qubit::pauli_x(), Factor::System, Time::Start));
    EXPECT_EDR_ERROR(joint_distribution(mp, x0, m, pure(qubit::ket_plus())), ErrorKind::Precondition);
}

TEST(Weak, MatchesTraceOfProjectorProducts) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto mp = random_measuring_process(2, 2, rng);
        const HermitianOperator a(testing::hermitian(2, rng));
        const DensityState rho(testing::density(2, rng));
        const auto w = weak_joint_distribution(mp, a, rho);
        const auto c = composite(mp, a.matrix(), rho.matrix());
        // Rebuild the projectors from rank-one eigenvector sums.
        Eigen::SelfAdjointEigenSolver<Matrix> ea(c.a0), em(c.m_end);
        Complex total = 0.0;
        for (std::size_t k = 0; k < w.values.size(); ++k) {
            Matrix p = Matrix::Zero(4, 4), q = Matrix::Zero(4, 4);
            for (Index i = 0; i < 4; ++i) {
                if (std::abs(ea.eigenvalues()(i) - w.support[k].first) < 1e-8) {
                    p += ea.eigenvectors().col(i) * ea.eigenvectors().col(i).adjoint();
                }
                if (std::abs(em.eigenvalues()(i) - w.support[k].second) < 1e-8) {
                    q += em.eigenvectors().col(i) * em.eigenvectors().col(i).adjoint();
                }
            }
            EXPECT_NEAR(std::abs(w.values[k] - (c.sigma * p * q).trace()), 0.0, 1e-10);
            total += w.values[k];
        }
        EXPECT_NEAR(std::abs(total - 1.0), 0.0, 1e-10);
        for (const auto &[x, px] : w.first_marginal()) {
            Complex born = 0.0;
            for (Index i = 0; i < 2; ++i) {
                Eigen::SelfAdjointEigenSolver<Matrix> e(a.matrix());
                if (std::abs(e.eigenvalues()(i) - x) < 1e-8) {
                    born += (e.eigenvectors().col(i).adjoint() * rho.matrix() * e.eigenvectors().col(i))(0, 0);
                }
            }
            EXPECT_NEAR(std::abs(px - born), 0.0, 1e-10);
        }
    }
}

TEST(Weak, NoncommutingPairHasComplexValues) {
    const auto mp = qubit::rotated_cnot_process(std::acos(-1.0) / 3.0);
    const auto w = weak_joint_distribution(mp, qubit::pauli_z(), pure(qubit::ket_plus_i()));
    double max_imag = 0.0;
    for (const Complex &v : w.values) {
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    EXPECT_GT(max_imag, 1e-3);
}

TEST(Precise, Examples) {
    const auto cnot = qubit::cnot_process();
    EXPECT_TRUE(is_precise(cnot, qubit::pauli_z(), DensityState::maximally_mixed(2)).holds);
    EXPECT_FALSE(is_precise(cnot, qubit::pauli_x(), pure(qubit::ket_plus())).holds);
    EXPECT_FALSE(is_precise(cnot, qubit::pauli_x(), pure(qubit::ket_plus())).commuting);

    // A constant reading of 1 is precise exactly in states supported on A = 1.
    const auto one = qubit::constant_meter_process(1.0);
    EXPECT_TRUE(is_precise(one, qubit::pauli_z(), pure(qubit::ket0())).holds);
    const auto mixed = is_precise(one, qubit::pauli_z(), pure(qubit::ket_plus()));
    EXPECT_TRUE(mixed.commuting);
    EXPECT_FALSE(mixed.holds);
    EXPECT_NEAR(mixed.off_diagonal_mass, 0.5, 1e-14);

    EXPECT_TRUE(is_non_disturbing(cnot, qubit::pauli_z(), pure(qubit::ket_plus())).holds);
    EXPECT_FALSE(is_non_disturbing(cnot, qubit::pauli_x(), pure(qubit::ket_plus())).holds);
}

TEST(Cyclic, Dimensions) {
    EXPECT_EQ(cyclic_subspace(qubit::pauli_z(), pure(qubit::ket_plus())).dim(), 2);
    EXPECT_EQ(cyclic_subspace(qubit::pauli_z(), pure(qubit::ket0())).dim(), 1);
    EXPECT_EQ(cyclic_subspace(HermitianOperator(identity(3)), pure(basis_vector(3, 1))).dim(), 1);
    const auto a = HermitianOperator::diagonal({1.0, 1.0, 2.0});
    Vector v(3);
    v << 1.0, 1.0, 1.0;
    v.normalize();
    const auto c = cyclic_subspace(a, pure(v));
    ASSERT_EQ(c.dim(), 2);
    // Span of (1,1,0)/sqrt2 and (0,0,1).
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = expected(0, 1) = expected(1, 0) = expected(1, 1) = 0.5;
    expected(2, 2) = 1.0;
    expect_matrix_near(c.projector(), expected, 1e-12);
}

TEST(Theorem1, Examples) {
    const auto one = qubit::constant_meter_process(1.0);
    const auto in_block = theorem1_conditions(one, qubit::pauli_z(), pure(qubit::ket0()));
    EXPECT_TRUE(in_block.precise && in_block.agree());
    const auto leaky = theorem1_conditions(one, qubit::pauli_z(), pure(qubit::ket_plus()));
    EXPECT_FALSE(leaky.precise);
    EXPECT_TRUE(leaky.agree());
    const auto cnot = theorem1_conditions(qubit::cnot_process(), qubit::pauli_z(), DensityState::maximally_mixed(2));
    EXPECT_TRUE(cnot.precise && cnot.agree());
}

TEST(Theorem1, RandomFamiliesAgree) {
    for (std::uint64_t i = 0; i < 60; ++i) {
        const auto inst = random_instance(99, i);
        const auto c = theorem1_conditions(inst.process, inst.a, inst.rho, i);
        EXPECT_TRUE(c.agree()) << family_name(inst.family) << " instance " << i;
        if (inst.family == InstanceFamily::PreciseOnSupport) {
            EXPECT_TRUE(c.precise) << i;
        }
        if (inst.family == InstanceFamily::LeakyPrecise) {
            EXPECT_FALSE(c.precise) << i;
        }
    }
}

TEST(LocallyUniform, Examples) {
    const auto zero = qubit::constant_meter_process(0.0);
    EXPECT_NEAR(locally_uniform_error(zero, qubit::pauli_z(), DensityState::maximally_mixed(2)), 1.0, 1e-12);
    const auto cnot = qubit::cnot_process();
    EXPECT_NEAR(locally_uniform_disturbance(cnot, qubit::pauli_x(), pure(qubit::ket_plus_i())), kSqrt2, 1e-12);
    EXPECT_NEAR(locally_uniform_error(cnot, qubit::pauli_z(), pure(qubit::ket_plus())), 0.0, 1e-12);
}

TEST(LocallyUniform, DominatesPointwiseErrorAndMatchesSampling) {
    std::mt19937_64 rng(21);
    for (std::uint64_t i = 0; i < 15; ++i) {
        const auto inst = random_instance(7, i);
        const double bar = locally_uniform_error(inst.process, inst.a, inst.rho);
        EXPECT_GE(bar + 1e-12, rms_error(inst.process, inst.a, inst.rho));
        const auto oracle = sampled_sup_error(inst.process, inst.a, inst.rho, 2000, i);
        EXPECT_LE(oracle.best_sample, bar + 1e-9);
        EXPECT_NEAR(oracle.refined, bar, 1e-6);
    }
}

}  // namespace
}  // namespace edrlab
