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

#include "edrlab/edr.hpp"

#include <cmath>

#include "edrlab/qubit_models.hpp"
#include "edrlab/random_models.hpp"
#include "test_support.hpp"

namespace edrlab {
namespace {

const double kSqrt2 = std::sqrt(2.0);

DensityState pure(const Vector &v) { return DensityState::pure(v); }

TEST(Edr, CnotPlusI) {
    const auto r = evaluate_edr(qubit::cnot_process(), qubit::pauli_z(), qubit::pauli_x(), pure(qubit::ket_plus_i()));
    EXPECT_NEAR(r.epsilon_A, 0.0, 1e-12);
    EXPECT_NEAR(r.eta_B, kSqrt2, 1e-12);
    EXPECT_NEAR(r.sigma_A, 1.0, 1e-12);
    EXPECT_NEAR(r.sigma_B, 1.0, 1e-12);
    EXPECT_NEAR(r.commutator_bound, 1.0, 1e-12);
    EXPECT_NEAR(r.correlation_term, 2.0, 1e-12);
    EXPECT_FALSE(r.heisenberg.satisfied);
    EXPECT_NEAR(r.heisenberg.lhs, 0.0, 1e-12);
    EXPECT_TRUE(r.universal.satisfied);
    EXPECT_TRUE(r.ozawa.satisfied);
    EXPECT_NEAR(r.ozawa.lhs, kSqrt2, 1e-9);
    ASSERT_TRUE(r.error_free.has_value());
    EXPECT_TRUE(r.error_free->satisfied);
    EXPECT_FALSE(r.non_disturbing.has_value());
}

TEST(Edr, CommutingStateHasZeroBound) {
    const auto r = evaluate_edr(qubit::cnot_process(), qubit::pauli_z(), qubit::pauli_x(), pure(qubit::ket0()));
    EXPECT_NEAR(r.commutator_bound, 0.0, 1e-14);
    EXPECT_TRUE(r.heisenberg.satisfied);
    EXPECT_TRUE(r.ozawa.satisfied);
}

TEST(Edr, NoInteractionLeavesBUndisturbed) {
    const auto mp = qubit::independent_meter_process(qubit::ket0());
    const auto r = evaluate_edr(mp, qubit::pauli_z(), qubit::pauli_x(), pure(qubit::ket_plus_i()));
    EXPECT_NEAR(r.eta_B, 0.0, 1e-12);
    // The meter always reads +1: eps^2 = <(1 - Z)^2> = 2 - 2<Z>.
    EXPECT_NEAR(r.epsilon_A, kSqrt2, 1e-12);
    ASSERT_TRUE(r.non_disturbing.has_value());
    EXPECT_NEAR(r.non_disturbing->lhs, kSqrt2, 1e-9);
    EXPECT_TRUE(r.non_disturbing->satisfied);
}

TEST(Edr, ConstantMeter) {
    const auto mp = qubit::constant_meter_process(0.0);
    const auto r = locally_uniform_edr(mp, qubit::pauli_z(), qubit::pauli_y(), pure(qubit::ket_plus()));
    EXPECT_NEAR(r.epsilon_A, 1.0, 1e-12);
    ASSERT_TRUE(r.epsilon_bar.has_value());
    EXPECT_NEAR(*r.epsilon_bar, 1.0, 1e-12);
    EXPECT_NEAR(*r.eta_bar, 0.0, 1e-12);
    EXPECT_TRUE(r.locally_uniform->satisfied);
}

TEST(Edr, RelationsHoldOnRandomInstances) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto inst = random_instance(2024, i);
        const auto r = locally_uniform_edr(inst.process, inst.a, inst.b, inst.rho);
        EXPECT_TRUE(r.universal.satisfied) << i;
        EXPECT_TRUE(r.ozawa.satisfied) << i;
        EXPECT_TRUE(r.locally_uniform->satisfied) << i;
        EXPECT_GE(*r.epsilon_bar + 1e-12, r.epsilon_A);
        EXPECT_GE(*r.eta_bar + 1e-12, r.eta_B);
    }
}

TEST(Edr, LargeOperatorsAreRescaledConsistently) {
    const auto inst = random_instance(5, 0);
    const double k = 1e5;
    const MeasuringProcess scaled(inst.process.system_dim(), inst.process.probe_state(), inst.process.coupling(),
                                  HermitianOperator(k * inst.process.meter().matrix()));
    const auto base = evaluate_edr(inst.process, inst.a, inst.b, inst.rho);
    const auto big = evaluate_edr(scaled, HermitianOperator(k * inst.a.matrix()), inst.b, inst.rho);
    EXPECT_NEAR(big.epsilon_A / k, base.epsilon_A, 1e-9 * std::max(1.0, base.epsilon_A));
    EXPECT_NEAR(big.commutator_bound / k, base.commutator_bound, 1e-9);
    EXPECT_EQ(big.ozawa.satisfied, base.ozawa.satisfied);
}

TEST(Edr, DimensionErrors) {
    EXPECT_EDR_ERROR(evaluate_edr(qubit::cnot_process(), HermitianOperator(identity(3)), qubit::pauli_x(),
                                  DensityState::maximally_mixed(2)),
                     ErrorKind::DimensionMismatch);
}

}  // namespace
}  // namespace edrlab
