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

#include <Eigen/Dense>

#include "edrlab/edr_report.hpp"
#include "edrlab/tolerances.hpp"

// Position measurement of a one-dimensional mass S by a probe mass P with
// meter Qbar. Both interaction Hamiltonians are quadratic in the canonical
// quadruple, so the Heisenberg picture is a linear map on (Q, P, Qbar, Pbar)
// and every rms quantity follows from first and second moments.

namespace edrlab::cv {

using Vec4 = Eigen::Vector4d;
using Row4 = Eigen::RowVector4d;
using Mat4 = Eigen::Matrix4d;

/// Index of each canonical operator in the fixed ordering (Q, P, Qbar, Pbar).
enum Quadrature : int { kQ = 0, kP = 1, kQbar = 2, kPbar = 3 };

/// J with J(Q,P) = J(Qbar,Pbar) = 1, so [x_i, x_j] = i hbar J(i,j).
Mat4 symplectic_form();

Row4 unit_row(Quadrature q);

/// Row i holds operator i at time tau as a combination of the t = 0 operators.
struct SymplecticTransfer {
    Mat4 matrix = Mat4::Identity();

    Row4 row(Quadrature q) const { return matrix.row(q); }
    /// max |S J S^T - J|.
    double symplectic_residual() const;
};

enum class CvModelKind { VonNeumann, Ozawa1988 };

const char *model_name(CvModelKind kind);

/// Coupling constant K. Time enters only through tau_fraction = K*tau, and
/// the measurement ends at tau_fraction = 1 (K*Delta t = 1).
struct CvModel {
    CvModelKind kind = CvModelKind::VonNeumann;
    double coupling = 1.0;

    double interaction_time() const { return 1.0 / coupling; }
};

/// First and second moments of one mode.
struct ModeMoments {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.5;
    double var_p = 0.5;
    double cov_qp = 0.0;  // symmetrized <(dq dp + dp dq)/2>

    /// Uncorrelated minimum-uncertainty packet: var_q * var_p = hbar^2/4.
    static ModeMoments minimal(double var_q, double hbar = 1.0, double mean_q = 0.0,
                               double mean_p = 0.0);
};

/// Robertson condition for one mode: var_q var_p - cov_qp^2 >= hbar^2/4.
void validate_mode(const ModeMoments &mode, double hbar,
                   const Tolerances &tol = default_tolerances());

/// Gaussian moments of the object-probe pair at t = 0. The two parties are
/// independent (product state), so the off-diagonal 2x2 blocks vanish.
class GaussianState4 {
   public:
    GaussianState4(const Vec4 &mean, const Mat4 &cov, double hbar = 1.0,
                   const Tolerances &tol = default_tolerances());

    static GaussianState4 product(const ModeMoments &object, const ModeMoments &probe,
                                  double hbar = 1.0,
                                  const Tolerances &tol = default_tolerances());

    const Vec4 &mean() const { return mean_; }
    const Mat4 &cov() const { return cov_; }
    double hbar() const { return hbar_; }

    /// <(c.x)^2> for the operator c.x, i.e. c cov c^T + (c.mean)^2.
    double raw_second_moment(const Row4 &c) const;
    /// Var(c.x) = c cov c^T.
    double variance(const Row4 &c) const;
    double mean_of(const Row4 &c) const { return c.dot(mean_.transpose()); }

   private:
    Vec4 mean_;
    Mat4 cov_;
    double hbar_;
};

// Closed-form transfers.

SymplecticTransfer von_neumann_transfer(double tau_fraction = 1.0);
SymplecticTransfer ozawa_transfer(double tau_fraction);
SymplecticTransfer transfer(CvModelKind kind, double tau_fraction = 1.0);

/// Symmetric h with H = (1/2) x^T h x for the interaction Hamiltonian (per
/// unit coupling constant).
Mat4 interaction_hamiltonian(CvModelKind kind);

/// Independent route: exponentiates the generator J h of the Heisenberg flow
/// numerically.
SymplecticTransfer matrix_exponential_check(CvModelKind kind, double tau_fraction);

// Quantities at the end of the interaction (tau_fraction = 1).

/// eps(Q) = <(Qbar(dt) - Q(0))^2>^(1/2).
double rms_error_q(CvModelKind kind, const GaussianState4 &state);
/// eta(P) = <(P(dt) - P(0))^2>^(1/2).
double rms_disturbance_p(CvModelKind kind, const GaussianState4 &state);

/// EDR sides for A = Q, B = P. `heisenberg` is eps*eta >= hbar/2.
EdrReport edr_product_report(CvModelKind kind, const GaussianState4 &state,
                             const Tolerances &tol = default_tolerances());

/// sigma_A * sigma_B >= bound for a pair of spreads.
struct UncertaintyReport {
    double sigma_A = 0.0;
    double sigma_B = 0.0;
    double product = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    bool equality = false;
};

/// sigma(Q) sigma(P) >= hbar/2. The variances must come from a valid state;
/// a pair violating Robertson's condition is rejected.
UncertaintyReport kennard_check(double var_q, double var_p, double hbar = 1.0,
                                const Tolerances &tol = default_tolerances());

/// The von Neumann model read as a joint measurement with M_Q = Qbar(dt),
/// M_P = P(dt).
struct ArthursKellyReport {
    UncertaintyReport meters;  // sigma(M_Q) sigma(M_P) >= hbar
    UncertaintyReport errors;  // eps(Q) eps(P) >= hbar/2
};

/// Requires an unbiased probe: <Qbar(0)> = <Pbar(0)> = 0.
ArthursKellyReport arthurs_kelly_check(const GaussianState4 &state,
                                       const Tolerances &tol = default_tolerances());

}  // namespace edrlab::cv
