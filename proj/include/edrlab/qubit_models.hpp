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

#include "edrlab/measurement.hpp"

// Qubit observables, states and the two-qubit measuring processes used by the
// scenarios. Basis order is (|0>, |1>) with sigma_z |0> = |0>.

namespace edrlab::qubit {

HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

Vector ket0();
Vector ket1();
Vector ket_plus();        // (|0> + |1>)/sqrt 2
Vector ket_plus_i();      // (|0> + i|1>)/sqrt 2, the +1 eigenvector of sigma_y
Vector ket_minus_i();

/// Controlled-NOT with the system as control, probe |0>, meter sigma_z.
MeasuringProcess cnot_process();
/// No interaction (U = I); probe |0> and a meter that always reads `reading`.
MeasuringProcess constant_meter_process(double reading = 0.0);
/// No interaction, probe `xi`, meter sigma_z: a reading independent of the system.
MeasuringProcess independent_meter_process(const Vector &xi);
/// CNOT preceded by a rotation exp(-i theta sigma_y / 2) of the system. The
/// meter then reads sigma_z along a tilted axis, so M(dt) and sigma_z (x) I do
/// not commute for theta outside multiples of pi.
MeasuringProcess rotated_cnot_process(double theta);

}  // namespace edrlab::qubit
