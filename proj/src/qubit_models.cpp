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

#include "edrlab/qubit_models.hpp"

#include <cmath>

namespace edrlab::qubit {

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Vector v2(Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    return v;
}

const Complex kI(0.0, 1.0);

Matrix cnot_matrix() {
    Matrix p0 = m2(1, 0, 0, 0);
    Matrix p1 = m2(0, 0, 0, 1);
    return tensor(p0, identity(2)) + tensor(p1, pauli_x().matrix());
}

}  // namespace

HermitianOperator pauli_x() { return HermitianOperator(m2(0, 1, 1, 0)); }
HermitianOperator pauli_y() { return HermitianOperator(m2(0, -kI, kI, 0)); }
HermitianOperator pauli_z() { return HermitianOperator(m2(1, 0, 0, -1)); }

Vector ket0() { return v2(1, 0); }
Vector ket1() { return v2(0, 1); }
Vector ket_plus() { return v2(1, 1) / std::sqrt(2.0); }
Vector ket_plus_i() { return v2(1, kI) / std::sqrt(2.0); }
Vector ket_minus_i() { return v2(1, -kI) / std::sqrt(2.0); }

MeasuringProcess cnot_process() {
    return MeasuringProcess(2, ket0(), UnitaryOperator(cnot_matrix()), pauli_z());
}

MeasuringProcess constant_meter_process(double reading) {
    return MeasuringProcess(2, ket0(), UnitaryOperator::identity(4),
                            HermitianOperator(reading * identity(2)));
}

MeasuringProcess independent_meter_process(const Vector &xi) {
    return MeasuringProcess(2, xi, UnitaryOperator::identity(4), pauli_z());
}

MeasuringProcess rotated_cnot_process(double theta) {
    double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Matrix r = m2(c, -s, s, c);
    Matrix u = cnot_matrix() * tensor(r, identity(2));
    return MeasuringProcess(2, ket0(), UnitaryOperator(u), pauli_z());
}

}  // namespace edrlab::qubit
