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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edrlab/error.hpp"

namespace edrlab {

const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "invalid argument";
        case ErrorKind::DimensionMismatch:
            return "dimension mismatch";
        case ErrorKind::Validation:
            return "validation error";
        case ErrorKind::Precondition:
            return "precondition violated";
        case ErrorKind::Config:
            return "configuration error";
        case ErrorKind::UnknownScenario:
            return "unknown scenario";
        case ErrorKind::Io:
            return "i/o error";
        case ErrorKind::Numeric:
            return "numerical error";
    }
    return "error";
}

namespace {

void require_square(const Matrix &m, const char *what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        std::ostringstream ss;
        ss << what << " must be a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix &entries, const Tolerances &tol) {
    require_square(entries, "Hermitian operator");
    double asym = max_asymmetry(entries);
    if (!(asym <= tol.hermit_tol)) {
        std::ostringstream ss;
        ss << "operator is not Hermitian: max |X - X^dagger| = " << asym;
        throw Error(ErrorKind::Validation, ss.str());
    }
    entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double> &values) {
    Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) {
        m(static_cast<Index>(k), static_cast<Index>(k)) = values[k];
    }
    return HermitianOperator(m);
}

DensityState::DensityState(const Matrix &entries, const Tolerances &tol) {
    require_square(entries, "density operator");
    double asym = max_asymmetry(entries);
    if (!(asym <= tol.hermit_tol)) {
        std::ostringstream ss;
        ss << "density operator is not Hermitian: max |rho - rho^dagger| = " << asym;
        throw Error(ErrorKind::Validation, ss.str());
    }
    entries_ = 0.5 * (entries + entries.adjoint());
    double trace = entries_.trace().real();
    if (!(std::abs(trace - 1.0) <= tol.trace_tol)) {
        std::ostringstream ss;
        ss << "density operator must have unit trace, got " << trace;
        throw Error(ErrorKind::Validation, ss.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_, Eigen::EigenvaluesOnly);
    double smallest = eig.eigenvalues()(0);
    if (smallest < -tol.positivity_tol) {
        std::ostringstream ss;
        ss << "density operator is not positive semidefinite: smallest eigenvalue " << smallest;
        throw Error(ErrorKind::Validation, ss.str());
    }
}

DensityState DensityState::pure(const Vector &psi, const Tolerances &tol) {
    if (psi.size() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "pure state vector is empty");
    }
    double norm = psi.norm();
    if (!(std::abs(norm - 1.0) <= tol.unit_norm_tol)) {
        std::ostringstream ss;
        ss << "pure state vector must have unit norm, got " << norm;
        throw Error(ErrorKind::Validation, ss.str());
    }
    return DensityState(psi * psi.adjoint(), tol);
}

DensityState DensityState::maximally_mixed(Index dim) {
    if (dim <= 0) {
        throw Error(ErrorKind::DimensionMismatch, "dimension must be positive");
    }
    return DensityState(identity(dim) / static_cast<double>(dim));
}

UnitaryOperator::UnitaryOperator(const Matrix &entries, const Tolerances &tol) {
    require_square(entries, "unitary operator");
    double defect = max_abs_entry(entries.adjoint() * entries - edrlab::identity(entries.rows()));
    if (!(defect <= tol.unitary_tol)) {
        std::ostringstream ss;
        ss << "operator is not unitary: max |U^dagger U - I| = " << defect;
        throw Error(ErrorKind::Validation, ss.str());
    }
    entries_ = entries;
}

UnitaryOperator UnitaryOperator::identity(Index dim) { return UnitaryOperator(edrlab::identity(dim)); }

Matrix SpectralDecomposition::reconstruct() const {
    if (projectors.empty()) {
        return Matrix();
    }
    Matrix out = Matrix::Zero(projectors.front().rows(), projectors.front().cols());
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        out += eigenvalues[k] * projectors[k];
    }
    return out;
}

SpectralDecomposition spectral_decompose(const HermitianOperator &op, const Tolerances &tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(op.matrix());
    if (eig.info() != Eigen::Success) {
        throw Error(ErrorKind::Numeric, "Hermitian eigensolver did not converge");
    }
    const auto &values = eig.eigenvalues();
    const Matrix &vectors = eig.eigenvectors();
    const Index n = values.size();

    SpectralDecomposition out;
    Index start = 0;
    while (start < n) {
        // Cluster by gap to the previous member so that a run of values each
        // within degeneracy_tol of its neighbour merges.
        Index stop = start + 1;
        while (stop < n && values(stop) - values(stop - 1) <= tol.degeneracy_tol) {
            ++stop;
        }
        auto block = vectors.middleCols(start, stop - start);
        out.eigenvalues.push_back(values.segment(start, stop - start).mean());
        out.projectors.push_back(block * block.adjoint());
        start = stop;
    }
    return out;
}

Matrix tensor(const Matrix &a, const Matrix &b) {
    const Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
    for (Index i = 0; i < ar; ++i) {
        for (Index j = 0; j < ac; ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

Complex expectation(const Matrix &op, const DensityState &state) {
    if (op.rows() != state.dim() || op.cols() != state.dim()) {
        std::ostringstream ss;
        ss << "operator is " << op.rows() << "x" << op.cols() << " but state has dimension "
           << state.dim();
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
    // Tr[X rho] without forming the product.
    return (op.transpose().array() * state.matrix().array()).sum();
}

double std_dev(const HermitianOperator &op, const DensityState &state, const Tolerances &tol) {
    const Matrix &a = op.matrix();
    double mean = expectation(a, state).real();
    Matrix centered = a - mean * Matrix::Identity(a.rows(), a.cols());
    double variance = (centered * state.matrix() * centered).trace().real();
    return clamped_sqrt(variance, tol.variance_clamp_tol, "variance");
}

Matrix partial_probe_expectation(const Matrix &composite, const Vector &probe_state,
                                 const Tolerances &tol) {
    require_square(composite, "composite operator");
    const Index dp = probe_state.size();
    if (dp == 0 || composite.rows() % dp != 0) {
        std::ostringstream ss;
        ss << "composite dimension " << composite.rows() << " does not factor with probe dimension "
           << dp;
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
    double norm = probe_state.norm();
    if (!(std::abs(norm - 1.0) <= tol.unit_norm_tol)) {
        std::ostringstream ss;
        ss << "probe state must have unit norm, got " << norm;
        throw Error(ErrorKind::Validation, ss.str());
    }
    const Index ds = composite.rows() / dp;
    Matrix out(ds, ds);
    for (Index i = 0; i < ds; ++i) {
        for (Index j = 0; j < ds; ++j) {
            out(i, j) = probe_state.dot(composite.block(i * dp, j * dp, dp, dp) * probe_state);
        }
    }
    return out;
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

double max_abs_entry(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_asymmetry(const Matrix &m) { return max_abs_entry(m - m.adjoint()); }

double operator_norm(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix orthonormal_basis(const Matrix &columns, double rank_tol) {
    if (columns.cols() == 0) {
        return Matrix(columns.rows(), 0);
    }
    Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const auto &sv = svd.singularValues();
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > rank_tol) {
        ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

Matrix support_basis(const DensityState &state, double support_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(state.matrix());
    std::vector<Index> keep;
    for (Index k = 0; k < eig.eigenvalues().size(); ++k) {
        if (eig.eigenvalues()(k) > support_tol) {
            keep.push_back(k);
        }
    }
    Matrix out(state.dim(), static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        out.col(static_cast<Index>(c)) = eig.eigenvectors().col(keep[c]);
    }
    return out;
}

double clamped_sqrt(double raw, double tol, const char *what) {
    if (std::isnan(raw)) {
        throw Error(ErrorKind::Numeric, std::string(what) + " is NaN");
    }
    if (raw < -tol) {
        std::ostringstream ss;
        ss << what << " is negative (" << raw << "), input is corrupted";
        throw Error(ErrorKind::Numeric, ss.str());
    }
    return std::sqrt(std::max(0.0, raw));
}

}  // namespace edrlab
