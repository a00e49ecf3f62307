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
#include <string>
#include <vector>

#include "edrlab/measurement.hpp"

// Estimating eps and eta from outcome statistics alone.
//
// The three-state method uses the mean outcome in rho, in
// rho2 = A rho A / t2 and in rho3 = (1 + A) rho (1 + A) / t3:
//
//   eps^2 = Tr[A^2 rho] + Tr[O2 rho] - (t3 Tr[O1 rho3] - Tr[O1 rho] - t2 Tr[O1 rho2])
//
// which follows from (1 + A) rho (1 + A) = rho + A rho + rho A + A rho A and
// the cross term Tr[(A O1 + O1 A) rho]. The weak-measurement method reads eps
// from the weak joint distribution: eps^2 = sum (x - y)^2 Re mu_W(x, y).

namespace edrlab {

/// Outcome POVM of some readout, with first and second moment operators
/// O_k = sum_m m^k E_m.
struct OutputMoments {
    std::vector<double> outcomes;
    std::vector<Matrix> povm;
    Matrix first;
    Matrix second;

    /// Born probabilities Tr[E_m rho].
    std::vector<double> probabilities(const DensityState &rho) const;
};

/// POVM of the meter reading M(dt).
OutputMoments meter_moments(const MeasuringProcess &mp,
                            const Tolerances &tol = default_tolerances());
/// POVM of a B measurement made right after the interaction, B(dt).
OutputMoments evolved_moments(const MeasuringProcess &mp, const HermitianOperator &b,
                              const Tolerances &tol = default_tolerances());
/// Projection-valued measure of B measured on the input state (t = 0).
OutputMoments direct_moments(const HermitianOperator &b,
                             const Tolerances &tol = default_tolerances());

struct ThreeStateEstimate {
    double value = 0.0;    // sqrt of the clamped squared estimate
    double squared = 0.0;  // raw estimate of eps^2 (or eta^2)
    bool shifted = false;  // A was replaced by A + shift*I to make rho2, rho3 preparable
    double shift = 0.0;
};

/// Exact-expectation three-state estimate of eps(A, rho) from the readout
/// moments. When Tr[A rho A] or Tr[(1+A) rho (1+A)] is below 1e-12 the
/// estimate is taken with A + c I and outcomes shifted by c,
/// c = 1 + max|eig(A)|; eps is invariant under the joint shift.
ThreeStateEstimate three_state_error(const OutputMoments &moments, const HermitianOperator &a,
                                     const DensityState &rho,
                                     const Tolerances &tol = default_tolerances());

/// Shift chosen explicitly; throws a Precondition error if rho2 or rho3 is
/// still not defined.
ThreeStateEstimate three_state_error_shifted(const OutputMoments &moments,
                                             const HermitianOperator &a, const DensityState &rho,
                                             double shift,
                                             const Tolerances &tol = default_tolerances());

/// Disturbance analog: B measured at dt plays the meter, compared with B(0).
ThreeStateEstimate three_state_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                                           const DensityState &rho,
                                           const Tolerances &tol = default_tolerances());

/// eps^2 = sum (x - y)^2 Re mu_W(x, y), clamped like std_dev.
double weak_method_error(const WeakJointDistribution &wjd,
                         const Tolerances &tol = default_tolerances());
/// The same functional on the (B(0), B(dt)) weak joint distribution.
double weak_method_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                               const DensityState &rho,
                               const Tolerances &tol = default_tolerances());

/// Outcome counts of repeated readouts of one prepared state.
struct SampledStatistics {
    std::string label;
    std::uint64_t seed = 0;
    std::uint64_t n_shots = 0;
    std::vector<double> outcomes;
    std::vector<std::uint64_t> counts;

    /// Empirical mean of f(outcome).
    template <class F>
    double mean_of(F f) const {
        double s = 0.0;
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
            s += static_cast<double>(counts[k]) * f(outcomes[k]);
        }
        return s / static_cast<double>(n_shots);
    }
    double mean() const {
        return mean_of([](double x) { return x; });
    }
    /// Unbiased sample variance of f(outcome).
    template <class F>
    double variance_of(F f) const {
        double m = mean_of(f);
        double s = 0.0;
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
            double d = f(outcomes[k]) - m;
            s += static_cast<double>(counts[k]) * d * d;
        }
        return n_shots > 1 ? s / static_cast<double>(n_shots - 1) : 0.0;
    }
};

/// n_shots i.i.d. readouts from the POVM in state rho; deterministic per seed.
SampledStatistics sample_povm(const OutputMoments &moments, const DensityState &rho,
                              std::uint64_t n_shots, std::uint64_t seed,
                              const std::string &label = "rho");

/// Meter outcomes of M(dt) in rho (x) |xi><xi|.
SampledStatistics sample_outcomes(const MeasuringProcess &mp, const DensityState &rho,
                                  std::uint64_t n_shots, std::uint64_t seed,
                                  const Tolerances &tol = default_tolerances());

/// A squared-quantity estimate from finite statistics with its standard error.
struct SampledEstimate {
    double squared = 0.0;
    double standard_error = 0.0;
    double value = 0.0;  // sqrt(max(0, squared))
    bool shifted = false;
    double shift = 0.0;
    std::vector<SampledStatistics> batches;
};

/// Three-state estimate of eps(A, rho)^2 from n_shots readouts in each of
/// rho, rho2, rho3 plus n_shots direct A measurements on rho.
SampledEstimate three_state_error_sampled(const MeasuringProcess &mp, const HermitianOperator &a,
                                          const DensityState &rho, std::uint64_t n_shots,
                                          std::uint64_t seed,
                                          const Tolerances &tol = default_tolerances());
/// Same with B(dt) readouts and direct B measurements.
SampledEstimate three_state_disturbance_sampled(const MeasuringProcess &mp,
                                                const HermitianOperator &b,
                                                const DensityState &rho, std::uint64_t n_shots,
                                                std::uint64_t seed,
                                                const Tolerances &tol = default_tolerances());

}  // namespace edrlab
