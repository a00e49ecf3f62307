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

#include "edrlab/edr_report.hpp"
#include "edrlab/measurement.hpp"

// Error-disturbance relations for a finite-dimensional measuring process.
// The Heisenberg-type product relation is reported but not expected to hold;
// the universal, three-term and locally uniform relations are theorems and a
// failure beyond `theorem_tol` indicates a bug.
//
// Instances whose operator norms exceed `rescale_norm` are evaluated after
// rescaling (A and M by one factor, B by another); every side of the
// relations is homogeneous of degree one in each factor, so reported values
// are mapped back to the original units.

namespace edrlab {

/// epsilon, eta, sigma terms, the correlation term, and every relation
/// evaluated at once:
///   heisenberg:  eps(A) eta(B) >= |<[A,B]>|/2
///   universal:   eps(A) eta(B) + |<[n(A),B]> + <[A,d(B)]>| >= |<[A,B]>|/2
///   ozawa:       eps eta + eps sigma(B) + sigma(A) eta >= |<[A,B]>|/2
///   error_free:  sigma(A) eta(B) >= |<[A,B]>|/2, filled only when eps(A) vanishes
///   non_disturbing: eps(A) sigma(B) >= |<[A,B]>|/2, filled only when eta(B) vanishes
EdrReport evaluate_edr(const MeasuringProcess &mp, const HermitianOperator &a,
                       const HermitianOperator &b, const DensityState &rho,
                       const Tolerances &tol = default_tolerances());

/// Three-term relation with eps_bar(A, rho) and eta_bar(B, rho); fills
/// `epsilon_bar`, `eta_bar` and `locally_uniform` on top of evaluate_edr.
EdrReport locally_uniform_edr(const MeasuringProcess &mp, const HermitianOperator &a,
                              const HermitianOperator &b, const DensityState &rho,
                              const Tolerances &tol = default_tolerances());

}  // namespace edrlab
