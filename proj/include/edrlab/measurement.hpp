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

#include <cstdint>
#include <utility>
#include <vector>

#include "edrlab/linalg.hpp"

// Finite-dimensional measuring processes (K, |xi>, U, M): a probe space of
// dimension probe_dim prepared in |xi>, a coupling unitary U on
// system (x) probe, and a meter observable M on the probe. Composite indices
// are system-major, matching `tensor`.

namespace edrlab {

class MeasuringProcess {
   public:
    MeasuringProcess(Index system_dim, Vector probe_state, UnitaryOperator coupling,
                     HermitianOperator meter, const Tolerances &tol = default_tolerances());

    Index system_dim() const { return system_dim_; }
    Index probe_dim() const { return probe_state_.size(); }
    Index composite_dim() const { return system_dim_ * probe_dim(); }
    const Vector &probe_state() const { return probe_state_; }
    const UnitaryOperator &coupling() const { return coupling_; }
    const HermitianOperator &meter() const { return meter_; }

    /// rho (x) |xi><xi|.
    DensityState composite_state(const DensityState &rho) const;

   private:
    Index system_dim_;
    Vector probe_state_;
    UnitaryOperator coupling_;
    HermitianOperator meter_;
};

enum class Factor { System, Probe };
enum class Time { Start, End };

/// A(0) = A (x) I or I (x) A; A(dt) = U^dagger A(0) U.
Matrix heisenberg_evolve(const MeasuringProcess &mp, const HermitianOperator &op, Factor factor,
                         Time time);

struct ErrorObservables {
    Matrix noise;             // N(A) = M(dt) - A(0)
    Matrix disturbance;       // D(B) = B(dt) - B(0)
    Matrix mean_noise;        // n(A) = <xi|N(A)|xi>
    Matrix mean_disturbance;  // d(B) = <xi|D(B)|xi>
};

ErrorObservables error_observables(const MeasuringProcess &mp, const HermitianOperator &a,
                                   const HermitianOperator &b);

/// eps(A, rho)^2 = Tr[N(A)^2 rho (x) |xi><xi|].
double rms_error(const MeasuringProcess &mp, const HermitianOperator &a, const DensityState &rho,
                 const Tolerances &tol = default_tolerances());
/// eta(B, rho)^2 = Tr[D(B)^2 rho (x) |xi><xi|].
double rms_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                       const DensityState &rho, const Tolerances &tol = default_tolerances());

/// Joint outcome distribution of a pair (x, y) of eigenvalues.
struct JointDistribution {
    std::vector<std::pair<double, double>> support;
    std::vector<double> probs;

    /// Total probability on pairs with |x - y| > match_tol.
    double off_diagonal_mass(double match_tol) const;
};

/// <E^{A(0)}(dx) E^{M(dt)}(dy)>; complex in general.
struct WeakJointDistribution {
    std::vector<std::pair<double, double>> support;
    std::vector<Complex> values;

    /// Sum over y for each x (Born distribution of the first operator).
    std::vector<std::pair<double, Complex>> first_marginal() const;
    std::vector<std::pair<double, Complex>> second_marginal() const;
    /// Largest |value| over pairs with |x - y| > match_tol.
    double max_off_diagonal(double match_tol) const;
};

/// ||[X, Y] P_support|| where P_support projects onto the support of
/// rho (x) |xi><xi|.
double support_commutator_norm(const MeasuringProcess &mp, const Matrix &first,
                               const Matrix &second, const DensityState &rho,
                               const Tolerances &tol = default_tolerances());

/// Requires the composite operators to commute on the support of the state;
/// otherwise throws a Precondition error pointing at the weak distribution.
JointDistribution joint_distribution(const MeasuringProcess &mp, const HermitianOperator &first,
                                     const HermitianOperator &second, const DensityState &rho,
                                     const Tolerances &tol = default_tolerances());

WeakJointDistribution weak_joint_distribution(const MeasuringProcess &mp,
                                              const HermitianOperator &first,
                                              const HermitianOperator &second,
                                              const DensityState &rho,
                                              const Tolerances &tol = default_tolerances());

/// Pair (A(0), M(dt)).
WeakJointDistribution weak_joint_distribution(const MeasuringProcess &mp,
                                              const HermitianOperator &a, const DensityState &rho,
                                              const Tolerances &tol = default_tolerances());
/// Pair (B(0), B(dt)).
WeakJointDistribution weak_disturbance_distribution(const MeasuringProcess &mp,
                                                    const HermitianOperator &b,
                                                    const DensityState &rho,
                                                    const Tolerances &tol = default_tolerances());

struct PrecisionDiagnostics {
    bool holds = false;  // commuting on the support and concentrated on x == y
    bool commuting = false;
    double commutator_norm = 0.0;
    double off_diagonal_mass = 0.0;  // NaN when the pair does not commute
};

/// Whether M precisely measures A in rho: A(0) and M(dt) commute on the state
/// and their joint distribution vanishes off the diagonal.
PrecisionDiagnostics is_precise(const MeasuringProcess &mp, const HermitianOperator &a,
                                const DensityState &rho,
                                const Tolerances &tol = default_tolerances());

/// Same predicate for the pair (B(0), B(dt)).
PrecisionDiagnostics is_non_disturbing(const MeasuringProcess &mp, const HermitianOperator &b,
                                       const DensityState &rho,
                                       const Tolerances &tol = default_tolerances());

/// C(A, rho): span of E^A(Delta)|phi> over spectral sets Delta and |phi> in
/// the support of rho. Basis vectors are the columns of `basis`.
struct CyclicSubspace {
    Matrix basis;

    Index dim() const { return basis.cols(); }
    Matrix projector() const { return basis * basis.adjoint(); }
};

CyclicSubspace cyclic_subspace(const HermitianOperator &a, const DensityState &rho,
                               const Tolerances &tol = default_tolerances());

/// The four equivalent characterizations of precise measurement:
/// (i) precise in rho; (ii) the weak joint distribution vanishes on pairs of
/// disjoint sets; (iii) eps(A, phi) = 0 for every phi in C(A, rho), checked on
/// the basis and 20 random unit vectors; (iv) eps vanishes on a generating set
/// of C(A, rho), taken to be the computed basis.
struct Theorem1Conditions {
    bool precise = false;
    bool weak_diagonal = false;
    bool zero_error_on_subspace = false;
    bool zero_error_on_generators = false;

    bool agree() const {
        return precise == weak_diagonal && weak_diagonal == zero_error_on_subspace &&
               zero_error_on_subspace == zero_error_on_generators;
    }
};

Theorem1Conditions theorem1_conditions(const MeasuringProcess &mp, const HermitianOperator &a,
                                       const DensityState &rho, std::uint64_t seed = 0,
                                       const Tolerances &tol = default_tolerances());

/// sup of eps(A, phi) over unit phi in C(A, rho), as the top eigenvalue of the
/// quadratic form <phi| <xi|N(A)^2|xi> |phi> restricted to C(A, rho).
double locally_uniform_error(const MeasuringProcess &mp, const HermitianOperator &a,
                             const DensityState &rho,
                             const Tolerances &tol = default_tolerances());
/// Mirror with D(B) and C(B, rho).
double locally_uniform_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                                   const DensityState &rho,
                                   const Tolerances &tol = default_tolerances());

/// Sampling estimate of sup eps(A, phi) over unit phi in C(A, rho), found
/// without any eigen-solver. eps(A, phi)^2 = ||N(A) (phi (x) xi)||^2 is
/// evaluated at `samples` random unit vectors of the subspace, then the best
/// one is improved by random local search with a shrinking step.
struct SupOracle {
    double best_sample = 0.0;  // largest eps over the random samples
    double refined = 0.0;      // after local search
};
SupOracle sampled_sup_error(const MeasuringProcess &mp, const HermitianOperator &a,
                            const DensityState &rho, std::size_t samples, std::uint64_t seed,
                            const Tolerances &tol = default_tolerances());

}  // namespace edrlab
