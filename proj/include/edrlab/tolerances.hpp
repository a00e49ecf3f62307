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

namespace edrlab {

/// Numerical thresholds used across the library. One record so that every
/// comparison in a report can be traced back to a named value.
struct Tolerances {
    double hermit_tol = 1e-10;        // ||X - X^dagger||_max for Hermitian inputs
    double trace_tol = 1e-10;         // |Tr rho - 1|
    double positivity_tol = 1e-10;    // smallest admissible eigenvalue is -positivity_tol
    double unitary_tol = 1e-10;       // ||U^dagger U - I||_max
    double unit_norm_tol = 1e-10;     // | ||xi|| - 1 |
    double degeneracy_tol = 1e-8;     // eigenvalues closer than this share a projector
    double projector_tol = 1e-9;      // idempotence / completeness of spectral projectors
    double variance_clamp_tol = 1e-10;  // raw variances in [-tol, 0) clamp to 0
    double value_match_tol = 1e-8;    // decides x == y when pairing eigenvalues
    double commutator_tol = 1e-8;     // support-restricted commutator norm
    double support_tol = 1e-12;       // eigenvalues above this span a state's support
    double rank_tol = 1e-10;          // singular values above this count toward rank
    double diagonal_mass_tol = 1e-9;  // off-diagonal joint mass regarded as zero
    double zero_error_tol = 1e-9;     // rms error regarded as zero
    double theorem_tol = 1e-10;       // slack for universally valid inequalities
    double heisenberg_tol = 1e-12;    // slack for the Heisenberg-type inequalities
    double robertson_tol = 1e-9;      // smallest eigenvalue of cov + i(hbar/2)J
    double symplectic_tol = 1e-10;    // ||S J S^T - J||_max
    double rescale_norm = 1e3;        // operator norms above this are rescaled before EDR evaluation
};

const Tolerances &default_tolerances();

}  // namespace edrlab
