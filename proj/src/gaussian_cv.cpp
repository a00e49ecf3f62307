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

#include "edrlab/gaussian_cv.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "edrlab/error.hpp"

namespace edrlab::cv {

namespace {

void require_tau(double tau_fraction) {
    if (!(tau_fraction >= 0.0 && tau_fraction <= 1.0)) {
        std::ostringstream ss;
        ss << "tau_fraction must lie in [0, 1], got " << tau_fraction;
        throw Error(ErrorKind::InvalidArgument, ss.str());
    }
}

void require_hbar(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        std::ostringstream ss;
        ss << "hbar must be a positive finite number, got " << hbar;
        throw Error(ErrorKind::InvalidArgument, ss.str());
    }
}

UncertaintyReport uncertainty(double sigma_a, double sigma_b, double bound, double slack) {
    UncertaintyReport r;
    r.sigma_A = sigma_a;
    r.sigma_B = sigma_b;
    r.product = sigma_a * sigma_b;
    r.bound = bound;
    r.satisfied = r.product >= bound - slack;
    r.equality = std::abs(r.product - bound) <= slack;
    return r;
}

}  // namespace

Mat4 symplectic_form() {
    Mat4 j = Mat4::Zero();
    j(kQ, kP) = 1.0;
    j(kP, kQ) = -1.0;
    j(kQbar, kPbar) = 1.0;
    j(kPbar, kQbar) = -1.0;
    return j;
}

Row4 unit_row(Quadrature q) {
    Row4 r = Row4::Zero();
    r(q) = 1.0;
    return r;
}

double SymplecticTransfer::symplectic_residual() const {
    const Mat4 j = symplectic_form();
    return (matrix * j * matrix.transpose() - j).cwiseAbs().maxCoeff();
}

const char *model_name(CvModelKind kind) {
    return kind == CvModelKind::VonNeumann ? "von-neumann" : "ozawa-1988";
}

ModeMoments ModeMoments::minimal(double var_q, double hbar, double mean_q, double mean_p) {
    ModeMoments m;
    m.mean_q = mean_q;
    m.mean_p = mean_p;
    m.var_q = var_q;
    m.var_p = hbar * hbar / (4.0 * var_q);
    m.cov_qp = 0.0;
    return m;
}

void validate_mode(const ModeMoments &mode, double hbar, const Tolerances &tol) {
    require_hbar(hbar);
    if (!(mode.var_q > 0.0) || !(mode.var_p > 0.0)) {
        throw Error(ErrorKind::Validation, "mode variances must be positive");
    }
    // Smallest eigenvalue of [[vq, c + i h/2], [c - i h/2, vp]].
    double half_trace = 0.5 * (mode.var_q + mode.var_p);
    double half_gap = 0.5 * (mode.var_q - mode.var_p);
    double offdiag2 = mode.cov_qp * mode.cov_qp + 0.25 * hbar * hbar;
    double smallest = half_trace - std::sqrt(half_gap * half_gap + offdiag2);
    if (smallest < -tol.robertson_tol) {
        std::ostringstream ss;
        ss << "Robertson condition violated: var_q*var_p - cov^2 = "
           << mode.var_q * mode.var_p - mode.cov_qp * mode.cov_qp << " < hbar^2/4 = "
           << 0.25 * hbar * hbar;
        throw Error(ErrorKind::Validation, ss.str());
    }
}

GaussianState4::GaussianState4(const Vec4 &mean, const Mat4 &cov, double hbar,
                               const Tolerances &tol)
    : mean_(mean), cov_(0.5 * (cov + cov.transpose())), hbar_(hbar) {
    require_hbar(hbar);
    if (!mean.allFinite() || !cov.allFinite()) {
        throw Error(ErrorKind::Validation, "Gaussian moments must be finite");
    }
    double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol.hermit_tol) {
        std::ostringstream ss;
        ss << "covariance is not symmetric: max asymmetry " << asym;
        throw Error(ErrorKind::Validation, ss.str());
    }
    double cross = cov_.block<2, 2>(0, 2).cwiseAbs().maxCoeff();
    if (cross > tol.hermit_tol) {
        std::ostringstream ss;
        ss << "object and probe must be uncorrelated at t = 0, cross covariance " << cross;
        throw Error(ErrorKind::Validation, ss.str());
    }
    Eigen::Matrix4cd robertson = cov_.cast<std::complex<double>>();
    robertson += std::complex<double>(0.0, 0.5 * hbar) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(robertson, Eigen::EigenvaluesOnly);
    double smallest = eig.eigenvalues()(0);
    if (smallest < -tol.robertson_tol) {
        std::ostringstream ss;
        ss << "Robertson condition violated: smallest eigenvalue of cov + i(hbar/2)J is "
           << smallest;
        throw Error(ErrorKind::Validation, ss.str());
    }
}

GaussianState4 GaussianState4::product(const ModeMoments &object, const ModeMoments &probe,
                                       double hbar, const Tolerances &tol) {
    validate_mode(object, hbar, tol);
    validate_mode(probe, hbar, tol);
    Vec4 mean(object.mean_q, object.mean_p, probe.mean_q, probe.mean_p);
    Mat4 cov = Mat4::Zero();
    cov(kQ, kQ) = object.var_q;
    cov(kP, kP) = object.var_p;
    cov(kQ, kP) = cov(kP, kQ) = object.cov_qp;
    cov(kQbar, kQbar) = probe.var_q;
    cov(kPbar, kPbar) = probe.var_p;
    cov(kQbar, kPbar) = cov(kPbar, kQbar) = probe.cov_qp;
    return GaussianState4(mean, cov, hbar, tol);
}

double GaussianState4::raw_second_moment(const Row4 &c) const {
    double m = mean_of(c);
    return variance(c) + m * m;
}

double GaussianState4::variance(const Row4 &c) const { return c * cov_ * c.transpose(); }

SymplecticTransfer von_neumann_transfer(double tau_fraction) {
    require_tau(tau_fraction);
    SymplecticTransfer s;
    // Qbar(tau) = Qbar(0) + K tau Q(0);  P(tau) = P(0) - K tau Pbar(0).
    s.matrix(kQbar, kQ) = tau_fraction;
    s.matrix(kP, kPbar) = -tau_fraction;
    return s;
}

SymplecticTransfer ozawa_transfer(double tau_fraction) {
    require_tau(tau_fraction);
    SymplecticTransfer s;
    if (tau_fraction == 0.0) {
        return s;
    }
    if (tau_fraction == 1.0) {
        s.matrix << 1, 0, -1, 0,   // Q(dt)    = Q(0) - Qbar(0)
            0, 0, 0, -1,           // P(dt)    = -Pbar(0)
            1, 0, 0, 0,            // Qbar(dt) = Q(0)
            0, 1, 0, 1;            // Pbar(dt) = P(0) + Pbar(0)
        return s;
    }
    const double pi = std::numbers::pi;
    const double k = 2.0 / std::sqrt(3.0);
    const double lead = k * std::sin((1.0 + tau_fraction) * pi / 3.0);
    const double cross = k * std::sin(tau_fraction * pi / 3.0);
    const double trail = k * std::sin((1.0 - tau_fraction) * pi / 3.0);
    s.matrix << lead, 0, -cross, 0,
        0, trail, 0, -cross,
        cross, 0, trail, 0,
        0, cross, 0, lead;
    return s;
}

SymplecticTransfer transfer(CvModelKind kind, double tau_fraction) {
    return kind == CvModelKind::VonNeumann ? von_neumann_transfer(tau_fraction)
                                           : ozawa_transfer(tau_fraction);
}

Mat4 interaction_hamiltonian(CvModelKind kind) {
    Mat4 h = Mat4::Zero();
    if (kind == CvModelKind::VonNeumann) {
        // H = Q Pbar
        h(kQ, kPbar) = h(kPbar, kQ) = 1.0;
        return h;
    }
    // H = c (2 Q Pbar - 2 P Qbar + QP - Qbar Pbar), c = pi / (3 sqrt 3). The
    // ordering constants of QP and Qbar Pbar cancel and do not affect the flow.
    const double c = std::numbers::pi / (3.0 * std::sqrt(3.0));
    h(kQ, kPbar) = h(kPbar, kQ) = 2.0 * c;
    h(kP, kQbar) = h(kQbar, kP) = -2.0 * c;
    h(kQ, kP) = h(kP, kQ) = c;
    h(kQbar, kPbar) = h(kPbar, kQbar) = -c;
    return h;
}

SymplecticTransfer matrix_exponential_check(CvModelKind kind, double tau_fraction) {
    require_tau(tau_fraction);
    // d x_k / d(K tau) = (i/hbar)[H, x_k] = (J h x)_k, independent of hbar.
    Mat4 generator = symplectic_form() * interaction_hamiltonian(kind);
    Mat4 scaled = tau_fraction * generator;
    SymplecticTransfer s;
    s.matrix = scaled.exp();
    return s;
}

double rms_error_q(CvModelKind kind, const GaussianState4 &state) {
    Row4 n = transfer(kind).row(kQbar) - unit_row(kQ);
    return std::sqrt(std::max(0.0, state.raw_second_moment(n)));
}

double rms_disturbance_p(CvModelKind kind, const GaussianState4 &state) {
    Row4 d = transfer(kind).row(kP) - unit_row(kP);
    return std::sqrt(std::max(0.0, state.raw_second_moment(d)));
}

EdrReport edr_product_report(CvModelKind kind, const GaussianState4 &state,
                             const Tolerances &tol) {
    const SymplecticTransfer s = transfer(kind);
    const Mat4 j = symplectic_form();
    const Row4 n = s.row(kQbar) - unit_row(kQ);
    const Row4 d = s.row(kP) - unit_row(kP);
    const double hbar = state.hbar();

    EdrReport r;
    r.label = model_name(kind);
    r.epsilon_A = rms_error_q(kind, state);
    r.eta_B = rms_disturbance_p(kind, state);
    r.sigma_A = std::sqrt(state.cov()(kQ, kQ));
    r.sigma_B = std::sqrt(state.cov()(kP, kP));
    r.commutator_bound = 0.5 * hbar;

    // n(Q) and d(P) keep the object components of N(Q), D(P); the probe
    // components become c-numbers, which commute with everything.
    // <[n(Q), P]> + <[Q, d(P)]> = i hbar (sum_i n_i J(i,P) + sum_j d_j J(Q,j)).
    double corr = 0.0;
    for (int i : {kQ, kP}) {
        corr += n(i) * j(i, kP) + d(i) * j(kQ, i);
    }
    r.correlation_term = hbar * std::abs(corr);

    const double eps = r.epsilon_A, eta = r.eta_B;
    r.heisenberg = make_check(eps * eta, r.commutator_bound, tol.heisenberg_tol);
    r.universal = make_check(eps * eta + r.correlation_term, r.commutator_bound, tol.theorem_tol);
    r.ozawa = make_check(eps * eta + eps * r.sigma_B + r.sigma_A * eta, r.commutator_bound,
                         tol.theorem_tol);
    if (eps <= tol.theorem_tol) {
        r.error_free = make_check(r.sigma_A * eta, r.commutator_bound, tol.theorem_tol);
    }
    if (eta <= tol.theorem_tol) {
        r.non_disturbing = make_check(eps * r.sigma_B, r.commutator_bound, tol.theorem_tol);
    }
    return r;
}

UncertaintyReport kennard_check(double var_q, double var_p, double hbar, const Tolerances &tol) {
    ModeMoments mode;
    mode.var_q = var_q;
    mode.var_p = var_p;
    validate_mode(mode, hbar, tol);
    return uncertainty(std::sqrt(var_q), std::sqrt(var_p), 0.5 * hbar, tol.heisenberg_tol);
}

ArthursKellyReport arthurs_kelly_check(const GaussianState4 &state, const Tolerances &tol) {
    const double bias_q = state.mean()(kQbar), bias_p = state.mean()(kPbar);
    if (std::abs(bias_q) > tol.heisenberg_tol || std::abs(bias_p) > tol.heisenberg_tol) {
        std::ostringstream ss;
        ss << "joint measurement is biased: unbiasedness requires <Qbar(0)> = <Pbar(0)> = 0, got "
           << bias_q << ", " << bias_p;
        throw Error(ErrorKind::Precondition, ss.str());
    }
    const SymplecticTransfer s = von_neumann_transfer();
    const Row4 meter_q = s.row(kQbar);
    const Row4 meter_p = s.row(kP);
    const double hbar = state.hbar();

    ArthursKellyReport r;
    r.meters = uncertainty(std::sqrt(state.variance(meter_q)), std::sqrt(state.variance(meter_p)),
                           hbar, tol.heisenberg_tol);
    // Errors of the joint readout: M_Q against Q(0), M_P against P(0).
    const double eps_q = std::sqrt(state.raw_second_moment(meter_q - unit_row(kQ)));
    const double eps_p = std::sqrt(state.raw_second_moment(meter_p - unit_row(kP)));
    r.errors = uncertainty(eps_q, eps_p, 0.5 * hbar, tol.heisenberg_tol);
    return r;
}

}  // namespace edrlab::cv
