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

#include "edrlab/linalg.hpp"

#include "test_support.hpp"

namespace edrlab {
namespace {

using testing::expect_matrix_near;

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

TEST(Spectral, IdentityHasOneProjector) {
    auto s = spectral_decompose(HermitianOperator(identity(2)));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_DOUBLE_EQ(s.eigenvalues[0], 1.0);
    expect_matrix_near(s.projectors[0], identity(2), 1e-14);
}

TEST(Spectral, DiagonalIsSortedAscending) {
    auto s = spectral_decompose(HermitianOperator::diagonal({1.0, -1.0}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_DOUBLE_EQ(s.eigenvalues[0], -1.0);
    EXPECT_DOUBLE_EQ(s.eigenvalues[1], 1.0);
    expect_matrix_near(s.projectors[0], m2(0, 0, 0, 1), 1e-14);
    expect_matrix_near(s.projectors[1], m2(1, 0, 0, 0), 1e-14);
}

TEST(Spectral, PauliXProjectors) {
    auto s = spectral_decompose(HermitianOperator(m2(0, 1, 1, 0)));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
    EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
    expect_matrix_near(s.projectors[0], 0.5 * m2(1, -1, -1, 1), 1e-14);
    expect_matrix_near(s.projectors[1], 0.5 * m2(1, 1, 1, 1), 1e-14);
    for (const Matrix &p : s.projectors) {
        expect_matrix_near(p * p, p, 1e-14);
    }
    expect_matrix_near(s.reconstruct(), m2(0, 1, 1, 0), 1e-14);
}

TEST(Spectral, NearDegenerateValuesMerge) {
    auto s = spectral_decompose(HermitianOperator::diagonal({1.0, 1.0 + 1e-10, 2.0}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-9);
    EXPECT_NEAR(testing::trace_real(s.projectors[0]), 2.0, 1e-12);
}

TEST(Spectral, RandomProjectorsResolveIdentity) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Matrix h = testing::hermitian(4, rng);
        auto s = spectral_decompose(HermitianOperator(h));
        Matrix sum = Matrix::Zero(4, 4);
        for (std::size_t k = 0; k < s.size(); ++k) {
            sum += s.projectors[k];
            for (std::size_t l = 0; l < s.size(); ++l) {
                Matrix prod = s.projectors[k] * s.projectors[l];
                expect_matrix_near(prod, k == l ? s.projectors[k] : Matrix::Zero(4, 4), 1e-10);
            }
        }
        expect_matrix_near(sum, identity(4), 1e-10);
        expect_matrix_near(s.reconstruct(), h, 1e-10);
    }
}

TEST(Validation, RejectsNonHermitian) {
    EXPECT_EDR_ERROR(HermitianOperator(m2(0, 1, 0, 0)), ErrorKind::Validation);
}

TEST(Validation, RejectsNonSquare) {
    EXPECT_EDR_ERROR(HermitianOperator(Matrix::Zero(2, 3)), ErrorKind::DimensionMismatch);
}

TEST(Validation, RejectsBadStates) {
    EXPECT_EDR_ERROR(DensityState(m2(0.6, 0, 0, 0.6)), ErrorKind::Validation);
    EXPECT_EDR_ERROR(DensityState(m2(1.5, 0, 0, -0.5)), ErrorKind::Validation);
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_EDR_ERROR(DensityState::pure(v), ErrorKind::Validation);
}

TEST(Validation, RejectsNonUnitary) {
    EXPECT_EDR_ERROR(UnitaryOperator(m2(1, 1, 0, 1)), ErrorKind::Validation);
}

TEST(Validation, MessagesNameTheDefect) {
    try {
        HermitianOperator(m2(0, 1, 0, 0));
        FAIL();
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("Hermitian"), std::string::npos) << e.what();
    }
}

TEST(Tensor, Examples) {
    expect_matrix_near(tensor(identity(2), identity(2)), identity(4), 0.0);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 1.0, 1.0, 2.0, 2.0;
    expect_matrix_near(tensor(d, identity(2)), expected, 0.0);
}

TEST(Tensor, MatchesElementwiseDefinitionAndKeepsHermiticity) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Matrix a = testing::hermitian(3, rng), b = testing::hermitian(2, rng);
        Matrix k = tensor(a, b);
        expect_matrix_near(k, testing::kron(a, b), 1e-14);
        EXPECT_LE(max_asymmetry(k), 1e-14);
    }
}

TEST(Expectation, Examples) {
    std::mt19937_64 rng(5);
    DensityState rho(testing::density(3, rng));
    EXPECT_NEAR(std::abs(expectation(identity(3), rho) - Complex(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(expectation(m2(-1, 0, 0, 1), DensityState(m2(0.25, 0, 0, 0.75))).real(), 0.5, 1e-15);
    Vector plus(2);
    plus << 1.0, 1.0;
    plus /= std::sqrt(2.0);
    EXPECT_NEAR(expectation(m2(0, 1, 1, 0), DensityState::pure(plus)).real(), 1.0, 1e-15);
}

TEST(Expectation, EqualsTraceOfProduct) {
    std::mt19937_64 rng(6);
    Matrix op = testing::ginibre(3, 3, rng);
    DensityState rho(testing::density(3, rng));
    EXPECT_NEAR(std::abs(expectation(op, rho) - (op * rho.matrix()).trace()), 0.0, 1e-12);
}

TEST(StdDev, Examples) {
    Vector plus(2), zero(2);
    plus << 1.0, 1.0;
    plus /= std::sqrt(2.0);
    zero << 1.0, 0.0;
    HermitianOperator z = HermitianOperator::diagonal({1.0, -1.0});
    EXPECT_NEAR(std_dev(HermitianOperator(identity(2)), DensityState::pure(plus)), 0.0, 1e-12);
    EXPECT_NEAR(std_dev(z, DensityState::pure(plus)), 1.0, 1e-15);
    EXPECT_NEAR(std_dev(z, DensityState::pure(zero)), 0.0, 1e-15);
}

TEST(PartialProbe, Examples) {
    std::mt19937_64 rng(8);
    Vector xi = testing::ginibre(3, 1, rng).col(0).normalized();
    Matrix a = testing::hermitian(2, rng), b = testing::hermitian(3, rng);
    expect_matrix_near(partial_probe_expectation(identity(6), xi), identity(2), 1e-13);
    expect_matrix_near(partial_probe_expectation(tensor(a, identity(3)), xi), a, 1e-13);
    Complex bx = xi.dot(b * xi);
    expect_matrix_near(partial_probe_expectation(tensor(a, b), xi), a * bx, 1e-13);
}

TEST(PartialProbe, MatchesExplicitSumOverProbeBasis) {
    std::mt19937_64 rng(9);
    Matrix k = testing::ginibre(6, 6, rng);
    Vector xi = testing::ginibre(3, 1, rng).col(0).normalized();
    Matrix expected = Matrix::Zero(2, 2);
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            for (Index p = 0; p < 3; ++p) {
                for (Index q = 0; q < 3; ++q) {
                    expected(i, j) += std::conj(xi(p)) * k(i * 3 + p, j * 3 + q) * xi(q);
                }
            }
        }
    }
    expect_matrix_near(partial_probe_expectation(k, xi), expected, 1e-12);
}

TEST(PartialProbe, RejectsBadProbe) {
    Vector xi(2);
    xi << 1.0, 1.0;
    EXPECT_EDR_ERROR(partial_probe_expectation(identity(4), xi), ErrorKind::Validation);
    Vector xi3 = Vector::Zero(3);
    xi3(0) = 1.0;
    EXPECT_EDR_ERROR(partial_probe_expectation(identity(4), xi3), ErrorKind::DimensionMismatch);
}

TEST(ClampedSqrt, ClampsOnlyRoundOff) {
    EXPECT_EQ(clamped_sqrt(-1e-12, 1e-10, "x"), 0.0);
    EXPECT_DOUBLE_EQ(clamped_sqrt(4.0, 1e-10, "x"), 2.0);
    EXPECT_EDR_ERROR(clamped_sqrt(-1e-6, 1e-10, "x"), ErrorKind::Numeric);
}

}  // namespace
}  // namespace edrlab
