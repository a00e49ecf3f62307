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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "edrlab/tolerances.hpp"

namespace edrlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Self-adjoint matrix. The stored matrix is the Hermitian part of the input,
/// which differs from the input by at most `hermit_tol` entrywise.
class HermitianOperator {
   public:
    explicit HermitianOperator(const Matrix &entries,
                               const Tolerances &tol = default_tolerances());

    static HermitianOperator diagonal(const std::vector<double> &values);

    Index dim() const { return entries_.rows(); }
    const Matrix &matrix() const { return entries_; }

   private:
    Matrix entries_;
};

/// Positive semidefinite, unit-trace operator.
class DensityState {
   public:
    explicit DensityState(const Matrix &entries,
                          const Tolerances &tol = default_tolerances());

    /// |psi><psi| for a unit vector psi.
    static DensityState pure(const Vector &psi, const Tolerances &tol = default_tolerances());
    static DensityState maximally_mixed(Index dim);

    Index dim() const { return entries_.rows(); }
    const Matrix &matrix() const { return entries_; }

   private:
    Matrix entries_;
};

class UnitaryOperator {
   public:
    explicit UnitaryOperator(const Matrix &entries,
                             const Tolerances &tol = default_tolerances());

    static UnitaryOperator identity(Index dim);

    Index dim() const { return entries_.rows(); }
    const Matrix &matrix() const { return entries_; }

   private:
    Matrix entries_;
};

/// Spectral measure of a Hermitian operator on a finite set: one projector per
/// distinct eigenvalue, eigenvalues ascending.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;

    std::size_t size() const { return eigenvalues.size(); }
    Matrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const HermitianOperator &op,
                                         const Tolerances &tol = default_tolerances());

/// Kronecker product with `a` as the outer (slow) factor:
/// result((i*db + k), (j*db + l)) = a(i,j) * b(k,l).
Matrix tensor(const Matrix &a, const Matrix &b);

/// Tr[op * state].
Complex expectation(const Matrix &op, const DensityState &state);

/// sigma(A) = sqrt(<A^2> - <A>^2).
double std_dev(const HermitianOperator &op, const DensityState &state,
               const Tolerances &tol = default_tolerances());

/// Contracts the probe factor of a system (x) probe operator against the
/// probe vector xi: <phi|K|phi> = <phi (x) xi| composite |phi (x) xi>.
Matrix partial_probe_expectation(const Matrix &composite, const Vector &probe_state,
                                 const Tolerances &tol = default_tolerances());

// Helpers shared by the modules below.

Matrix identity(Index dim);
Matrix commutator(const Matrix &a, const Matrix &b);
double max_abs_entry(const Matrix &m);
double max_asymmetry(const Matrix &m);
/// Largest singular value.
double operator_norm(const Matrix &m);
/// Orthonormal basis (as columns) of the column span of `columns`.
Matrix orthonormal_basis(const Matrix &columns, double rank_tol);
/// Orthonormal basis of the support of a density operator.
Matrix support_basis(const DensityState &state, double support_tol);
/// sqrt of a quantity that is nonnegative in exact arithmetic; values in
/// [-tol, 0) are clamped, anything below raises a Numeric error naming `what`.
double clamped_sqrt(double raw, double tol, const char *what);

}  // namespace edrlab
