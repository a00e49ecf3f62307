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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "edrlab/error.hpp"

namespace edrlab {

namespace {

void require_dim(const MeasuringProcess &mp, Index dim, Factor factor, const char *what) {
    Index expected = factor == Factor::System ? mp.system_dim() : mp.probe_dim();
    if (dim != expected) {
        std::ostringstream ss;
        ss << what << " has dimension " << dim << ", expected " << expected;
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
}

void require_state(const MeasuringProcess &mp, const DensityState &rho) {
    require_dim(mp, rho.dim(), Factor::System, "system state");
}

Matrix embed(const MeasuringProcess &mp, const Matrix &op, Factor factor) {
    return factor == Factor::System ? tensor(op, identity(mp.probe_dim()))
                                    : tensor(identity(mp.system_dim()), op);
}

Matrix evolve(const MeasuringProcess &mp, const Matrix &composite) {
    const Matrix &u = mp.coupling().matrix();
    return u.adjoint() * composite * u;
}

// Columns sqrt(lambda_j) (v_j (x) xi) over the spectrum of rho, so that
// rho (x) |xi><xi| = F F^dagger. Eigenvalues at or below `floor` are dropped.
Matrix composite_factor(const MeasuringProcess &mp, const DensityState &rho, double floor) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
    std::vector<Index> keep;
    for (Index k = 0; k < eig.eigenvalues().size(); ++k) {
        if (eig.eigenvalues()(k) > floor) {
            keep.push_back(k);
        }
    }
    Matrix out(mp.composite_dim(), static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        Index k = keep[c];
        Matrix v = eig.eigenvectors().col(k);
        out.col(static_cast<Index>(c)) =
            std::sqrt(eig.eigenvalues()(k)) * tensor(v, mp.probe_state());
    }
    return out;
}

// Basis of the support of rho (x) |xi><xi|: v_j (x) xi for the support of rho.
Matrix composite_support(const MeasuringProcess &mp, const DensityState &rho,
                         const Tolerances &tol) {
    Matrix sys = support_basis(rho, tol.support_tol);
    Matrix out(mp.composite_dim(), sys.cols());
    for (Index c = 0; c < sys.cols(); ++c) {
        Matrix v = sys.col(c);
        out.col(c) = tensor(v, mp.probe_state());
    }
    return out;
}

// sqrt(Tr[X^2 rho (x) |xi><xi|]) = ||X F||_F, which keeps full relative
// accuracy when the value is tiny.
double rms_of(const Matrix &x, const Matrix &factor) { return (x * factor).norm(); }

// Spectral measure of an embedded and possibly evolved operator, built from
// the decomposition of the local operator so that degeneracies are exact.
struct EmbeddedSpectrum {
    std::vector<double> values;
    std::vector<Matrix> projectors;
};

EmbeddedSpectrum embedded_spectrum(const MeasuringProcess &mp, const HermitianOperator &op,
                                   Factor factor, Time time, const Tolerances &tol) {
    require_dim(mp, op.dim(), factor, factor == Factor::System ? "system observable" : "probe observable");
    SpectralDecomposition local = spectral_decompose(op, tol);
    EmbeddedSpectrum out;
    out.values = local.eigenvalues;
    for (const Matrix &p : local.projectors) {
        Matrix e = embed(mp, p, factor);
        out.projectors.push_back(time == Time::End ? evolve(mp, e) : e);
    }
    return out;
}

EmbeddedSpectrum composite_spectrum(const HermitianOperator &op, const Tolerances &tol) {
    SpectralDecomposition d = spectral_decompose(op, tol);
    return EmbeddedSpectrum{d.eigenvalues, d.projectors};
}

Matrix operator_of(const EmbeddedSpectrum &s) {
    Matrix out = Matrix::Zero(s.projectors.front().rows(), s.projectors.front().cols());
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        out += s.values[k] * s.projectors[k];
    }
    return out;
}

WeakJointDistribution weak_of(const EmbeddedSpectrum &first, const EmbeddedSpectrum &second,
                              const Matrix &factor) {
    WeakJointDistribution out;
    // <P_x Q_y> = Tr[F^dagger P_x Q_y F] = sum over entries of conj(P_x F) .* (Q_y F).
    std::vector<Matrix> left, right;
    for (const Matrix &p : first.projectors) {
        left.push_back(p * factor);
    }
    for (const Matrix &q : second.projectors) {
        right.push_back(q * factor);
    }
    for (std::size_t i = 0; i < first.values.size(); ++i) {
        for (std::size_t j = 0; j < second.values.size(); ++j) {
            out.support.emplace_back(first.values[i], second.values[j]);
            out.values.push_back((left[i].conjugate().array() * right[j].array()).sum());
        }
    }
    return out;
}

double support_commutator(const Matrix &x, const Matrix &y, const Matrix &support) {
    if (support.cols() == 0) {
        return 0.0;
    }
    return operator_norm(commutator(x, y) * support);
}

PrecisionDiagnostics diagonal_predicate(const MeasuringProcess &mp, const EmbeddedSpectrum &first,
                                        const EmbeddedSpectrum &second, const DensityState &rho,
                                        const Tolerances &tol) {
    PrecisionDiagnostics d;
    d.commutator_norm = support_commutator(operator_of(first), operator_of(second),
                                           composite_support(mp, rho, tol));
    d.commuting = d.commutator_norm <= tol.commutator_tol;
    if (!d.commuting) {
        d.off_diagonal_mass = std::numeric_limits<double>::quiet_NaN();
        return d;
    }
    WeakJointDistribution w = weak_of(first, second, composite_factor(mp, rho, tol.support_tol));
    double mass = 0.0;
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        if (std::abs(w.support[k].first - w.support[k].second) > tol.value_match_tol) {
            mass += w.values[k].real();
        }
    }
    d.off_diagonal_mass = mass;
    d.holds = std::abs(mass) <= tol.diagonal_mass_tol;
    return d;
}

// Largest sqrt(<phi|X^2 ...|phi>) for unit phi in span(basis), i.e. the
// largest singular value of X (basis (x) xi).
double sup_on_subspace(const MeasuringProcess &mp, const Matrix &x, const Matrix &basis) {
    if (basis.cols() == 0) {
        return 0.0;
    }
    Matrix lifted = tensor(basis, mp.probe_state());
    return operator_norm(x * lifted);
}

Matrix noise_operator(const MeasuringProcess &mp, const HermitianOperator &a) {
    require_dim(mp, a.dim(), Factor::System, "measured observable");
    return evolve(mp, embed(mp, mp.meter().matrix(), Factor::Probe)) -
           embed(mp, a.matrix(), Factor::System);
}

Matrix disturbance_operator(const MeasuringProcess &mp, const HermitianOperator &b) {
    require_dim(mp, b.dim(), Factor::System, "disturbed observable");
    Matrix b0 = embed(mp, b.matrix(), Factor::System);
    return evolve(mp, b0) - b0;
}

}  // namespace

MeasuringProcess::MeasuringProcess(Index system_dim, Vector probe_state, UnitaryOperator coupling,
                                   HermitianOperator meter, const Tolerances &tol)
    : system_dim_(system_dim),
      probe_state_(std::move(probe_state)),
      coupling_(std::move(coupling)),
      meter_(std::move(meter)) {
    if (system_dim_ <= 0 || probe_state_.size() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "system and probe dimensions must be positive");
    }
    double norm = probe_state_.norm();
    if (!(std::abs(norm - 1.0) <= tol.unit_norm_tol)) {
        std::ostringstream ss;
        ss << "probe state must have unit norm, got " << norm;
        throw Error(ErrorKind::Validation, ss.str());
    }
    if (coupling_.dim() != composite_dim()) {
        std::ostringstream ss;
        ss << "coupling unitary has dimension " << coupling_.dim() << ", expected "
           << composite_dim();
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
    if (meter_.dim() != probe_dim()) {
        std::ostringstream ss;
        ss << "meter observable has dimension " << meter_.dim() << ", expected " << probe_dim();
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
}

DensityState MeasuringProcess::composite_state(const DensityState &rho) const {
    require_state(*this, rho);
    return DensityState(tensor(rho.matrix(), probe_state_ * probe_state_.adjoint()));
}

Matrix heisenberg_evolve(const MeasuringProcess &mp, const HermitianOperator &op, Factor factor,
                         Time time) {
    require_dim(mp, op.dim(), factor, "observable");
    Matrix e = embed(mp, op.matrix(), factor);
    return time == Time::End ? evolve(mp, e) : e;
}

ErrorObservables error_observables(const MeasuringProcess &mp, const HermitianOperator &a,
                                   const HermitianOperator &b) {
    ErrorObservables out;
    out.noise = noise_operator(mp, a);
    out.disturbance = disturbance_operator(mp, b);
    out.mean_noise = partial_probe_expectation(out.noise, mp.probe_state());
    out.mean_disturbance = partial_probe_expectation(out.disturbance, mp.probe_state());
    return out;
}

double rms_error(const MeasuringProcess &mp, const HermitianOperator &a, const DensityState &rho,
                 const Tolerances &tol) {
    require_state(mp, rho);
    return rms_of(noise_operator(mp, a), composite_factor(mp, rho, tol.support_tol));
}

double rms_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                       const DensityState &rho, const Tolerances &tol) {
    require_state(mp, rho);
    return rms_of(disturbance_operator(mp, b), composite_factor(mp, rho, tol.support_tol));
}

double JointDistribution::off_diagonal_mass(double match_tol) const {
    double mass = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (std::abs(support[k].first - support[k].second) > match_tol) {
            mass += probs[k];
        }
    }
    return mass;
}

namespace {

std::vector<std::pair<double, Complex>> marginal(const WeakJointDistribution &w, bool first) {
    std::map<double, Complex> acc;
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        acc[first ? w.support[k].first : w.support[k].second] += w.values[k];
    }
    return {acc.begin(), acc.end()};
}

}  // namespace

std::vector<std::pair<double, Complex>> WeakJointDistribution::first_marginal() const {
    return marginal(*this, true);
}

std::vector<std::pair<double, Complex>> WeakJointDistribution::second_marginal() const {
    return marginal(*this, false);
}

double WeakJointDistribution::max_off_diagonal(double match_tol) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (std::abs(support[k].first - support[k].second) > match_tol) {
            worst = std::max(worst, std::abs(values[k]));
        }
    }
    return worst;
}

double support_commutator_norm(const MeasuringProcess &mp, const Matrix &first,
                               const Matrix &second, const DensityState &rho,
                               const Tolerances &tol) {
    require_state(mp, rho);
    if (first.rows() != mp.composite_dim() || second.rows() != mp.composite_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operators must act on the composite space");
    }
    return support_commutator(first, second, composite_support(mp, rho, tol));
}

JointDistribution joint_distribution(const MeasuringProcess &mp, const HermitianOperator &first,
                                     const HermitianOperator &second, const DensityState &rho,
                                     const Tolerances &tol) {
    double c = support_commutator_norm(mp, first.matrix(), second.matrix(), rho, tol);
    if (c > tol.commutator_tol) {
        std::ostringstream ss;
        ss << "operators do not commute on the support of the state (commutator norm " << c
           << "); no joint distribution exists, use weak_joint_distribution";
        throw Error(ErrorKind::Precondition, ss.str());
    }
    WeakJointDistribution w = weak_of(composite_spectrum(first, tol), composite_spectrum(second, tol),
                                      composite_factor(mp, rho, tol.support_tol));
    JointDistribution out;
    out.support = std::move(w.support);
    for (const Complex &v : w.values) {
        if (v.real() < -tol.positivity_tol) {
            std::ostringstream ss;
            ss << "joint probability is negative (" << v.real() << ")";
            throw Error(ErrorKind::Numeric, ss.str());
        }
        out.probs.push_back(std::max(0.0, v.real()));
    }
    return out;
}

WeakJointDistribution weak_joint_distribution(const MeasuringProcess &mp,
                                              const HermitianOperator &first,
                                              const HermitianOperator &second,
                                              const DensityState &rho, const Tolerances &tol) {
    require_state(mp, rho);
    if (first.dim() != mp.composite_dim() || second.dim() != mp.composite_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operators must act on the composite space");
    }
    return weak_of(composite_spectrum(first, tol), composite_spectrum(second, tol),
                   composite_factor(mp, rho, tol.support_tol));
}

WeakJointDistribution weak_joint_distribution(const MeasuringProcess &mp,
                                              const HermitianOperator &a, const DensityState &rho,
                                              const Tolerances &tol) {
    require_state(mp, rho);
    return weak_of(embedded_spectrum(mp, a, Factor::System, Time::Start, tol),
                   embedded_spectrum(mp, mp.meter(), Factor::Probe, Time::End, tol),
                   composite_factor(mp, rho, tol.support_tol));
}

WeakJointDistribution weak_disturbance_distribution(const MeasuringProcess &mp,
                                                    const HermitianOperator &b,
                                                    const DensityState &rho,
                                                    const Tolerances &tol) {
    require_state(mp, rho);
    return weak_of(embedded_spectrum(mp, b, Factor::System, Time::Start, tol),
                   embedded_spectrum(mp, b, Factor::System, Time::End, tol),
                   composite_factor(mp, rho, tol.support_tol));
}

PrecisionDiagnostics is_precise(const MeasuringProcess &mp, const HermitianOperator &a,
                                const DensityState &rho, const Tolerances &tol) {
    require_state(mp, rho);
    return diagonal_predicate(mp, embedded_spectrum(mp, a, Factor::System, Time::Start, tol),
                              embedded_spectrum(mp, mp.meter(), Factor::Probe, Time::End, tol),
                              rho, tol);
}

PrecisionDiagnostics is_non_disturbing(const MeasuringProcess &mp, const HermitianOperator &b,
                                       const DensityState &rho, const Tolerances &tol) {
    require_state(mp, rho);
    return diagonal_predicate(mp, embedded_spectrum(mp, b, Factor::System, Time::Start, tol),
                              embedded_spectrum(mp, b, Factor::System, Time::End, tol), rho, tol);
}

CyclicSubspace cyclic_subspace(const HermitianOperator &a, const DensityState &rho,
                               const Tolerances &tol) {
    if (a.dim() != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observable and state dimensions differ");
    }
    SpectralDecomposition spec = spectral_decompose(a, tol);
    Matrix support = support_basis(rho, tol.support_tol);
    Matrix candidates(a.dim(), support.cols() * static_cast<Index>(spec.size()));
    Index c = 0;
    for (const Matrix &p : spec.projectors) {
        for (Index j = 0; j < support.cols(); ++j) {
            candidates.col(c++) = p * support.col(j);
        }
    }
    return CyclicSubspace{orthonormal_basis(candidates, tol.rank_tol)};
}

Theorem1Conditions theorem1_conditions(const MeasuringProcess &mp, const HermitianOperator &a,
                                       const DensityState &rho, std::uint64_t seed,
                                       const Tolerances &tol) {
    Theorem1Conditions out;
    out.precise = is_precise(mp, a, rho, tol).holds;

    // On finite spectra, vanishing on all disjoint (Delta, Gamma) is the same
    // as vanishing on every off-diagonal singleton pair.
    WeakJointDistribution w = weak_joint_distribution(mp, a, rho, tol);
    out.weak_diagonal = w.max_off_diagonal(tol.value_match_tol) <= tol.diagonal_mass_tol;

    CyclicSubspace c = cyclic_subspace(a, rho, tol);
    bool generators_ok = true;
    for (Index j = 0; j < c.dim(); ++j) {
        Vector phi = c.basis.col(j);
        generators_ok =
            generators_ok && rms_error(mp, a, DensityState::pure(phi), tol) <= tol.zero_error_tol;
    }
    out.zero_error_on_generators = generators_ok;

    bool subspace_ok = generators_ok;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int sample = 0; sample < 20 && c.dim() > 0; ++sample) {
        Vector coeffs(c.dim());
        for (Index j = 0; j < c.dim(); ++j) {
            double re = normal(rng);
            double im = normal(rng);
            coeffs(j) = Complex(re, im);
        }
        Vector phi = c.basis * coeffs.normalized();
        phi.normalize();
        subspace_ok =
            subspace_ok && rms_error(mp, a, DensityState::pure(phi), tol) <= tol.zero_error_tol;
    }
    out.zero_error_on_subspace = subspace_ok;
    return out;
}

double locally_uniform_error(const MeasuringProcess &mp, const HermitianOperator &a,
                             const DensityState &rho, const Tolerances &tol) {
    require_state(mp, rho);
    return sup_on_subspace(mp, noise_operator(mp, a), cyclic_subspace(a, rho, tol).basis);
}

double locally_uniform_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                                   const DensityState &rho, const Tolerances &tol) {
    require_state(mp, rho);
    return sup_on_subspace(mp, disturbance_operator(mp, b), cyclic_subspace(b, rho, tol).basis);
}

SupOracle sampled_sup_error(const MeasuringProcess &mp, const HermitianOperator &a,
                            const DensityState &rho, std::size_t samples, std::uint64_t seed,
                            const Tolerances &tol) {
    require_state(mp, rho);
    const Matrix basis = cyclic_subspace(a, rho, tol).basis;
    SupOracle out;
    if (basis.cols() == 0 || samples == 0) {
        return out;
    }
    const Matrix n = error_observables(mp, a, a).noise;
    const Vector &xi = mp.probe_state();
    // <psi|N^2|psi> = ||N psi||^2 for Hermitian N.
    auto value = [&](const Vector &c) {
        Vector phi = basis * c;
        Vector psi = tensor(phi, xi).col(0);
        return (n * psi).squaredNorm();
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&] {
        Vector c(basis.cols());
        for (Index k = 0; k < c.size(); ++k) {
            c(k) = Complex(normal(rng), normal(rng));
        }
        return c;
    };
    Vector best;
    double best_value = -1.0;
    for (std::size_t s = 0; s < samples; ++s) {
        Vector c = draw().normalized();
        double v = value(c);
        if (v > best_value) {
            best_value = v;
            best = c;
        }
    }
    out.best_sample = std::sqrt(best_value);

    double step = 0.5;
    int failures = 0;
    while (step > 1e-9) {
        Vector trial = (best + step * draw().normalized()).normalized();
        double v = value(trial);
        if (v > best_value) {
            best_value = v;
            best = trial;
            failures = 0;
        } else if (++failures >= 30) {
            step *= 0.5;
            failures = 0;
        }
    }
    out.refined = std::sqrt(best_value);
    return out;
}

}  // namespace edrlab
