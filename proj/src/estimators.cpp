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

#include "edrlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "edrlab/error.hpp"
#include "edrlab/random_models.hpp"

namespace edrlab {

namespace {

constexpr double kPreparableTrace = 1e-12;

OutputMoments assemble(std::vector<double> outcomes, std::vector<Matrix> povm) {
    OutputMoments m;
    m.outcomes = std::move(outcomes);
    m.povm = std::move(povm);
    const Index d = m.povm.front().rows();
    m.first = Matrix::Zero(d, d);
    m.second = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < m.outcomes.size(); ++k) {
        m.first += m.outcomes[k] * m.povm[k];
        m.second += m.outcomes[k] * m.outcomes[k] * m.povm[k];
    }
    return m;
}

OutputMoments shifted(const OutputMoments &m, double c) {
    if (c == 0.0) {
        return m;
    }
    std::vector<double> outcomes = m.outcomes;
    for (double &x : outcomes) {
        x += c;
    }
    return assemble(std::move(outcomes), m.povm);
}

OutputMoments probe_averaged(const MeasuringProcess &mp, const SpectralDecomposition &spec,
                             Factor factor) {
    const Matrix &u = mp.coupling().matrix();
    std::vector<Matrix> povm;
    for (const Matrix &p : spec.projectors) {
        Matrix e = factor == Factor::System ? tensor(p, identity(mp.probe_dim()))
                                            : tensor(identity(mp.system_dim()), p);
        povm.push_back(partial_probe_expectation(u.adjoint() * e * u, mp.probe_state()));
    }
    return assemble(spec.eigenvalues, std::move(povm));
}

double trace_real(const Matrix &op, const DensityState &rho) { return expectation(op, rho).real(); }

double max_abs_eigenvalue(const HermitianOperator &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a.matrix(), Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

struct PreparedStates {
    Matrix shifted_a;  // A + c I
    double t2 = 0.0;   // Tr[A' rho A']
    double t3 = 0.0;   // Tr[(1 + A') rho (1 + A')]
    DensityState rho2;
    DensityState rho3;
};

PreparedStates prepare(const HermitianOperator &a, const DensityState &rho, double c) {
    const Index d = a.dim();
    Matrix ap = a.matrix() + c * identity(d);
    Matrix one_plus = identity(d) + ap;
    Matrix r2 = ap * rho.matrix() * ap;
    Matrix r3 = one_plus * rho.matrix() * one_plus;
    double t2 = r2.trace().real();
    double t3 = r3.trace().real();
    if (!(t2 > kPreparableTrace) || !(t3 > kPreparableTrace)) {
        std::ostringstream ss;
        ss << "three-state method needs Tr[A rho A] and Tr[(1+A) rho (1+A)] above "
           << kPreparableTrace << " (got " << t2 << ", " << t3
           << "); use a shifted observable A + c I";
        throw Error(ErrorKind::Precondition, ss.str());
    }
    return PreparedStates{ap, t2, t3, DensityState(r2 / t2), DensityState(r3 / t3)};
}

bool preparable(const HermitianOperator &a, const DensityState &rho) {
    const Matrix &am = a.matrix();
    Matrix one_plus = identity(a.dim()) + am;
    double t2 = (am * rho.matrix() * am).trace().real();
    double t3 = (one_plus * rho.matrix() * one_plus).trace().real();
    return t2 > kPreparableTrace && t3 > kPreparableTrace;
}

double choose_shift(const HermitianOperator &a, const DensityState &rho) {
    return preparable(a, rho) ? 0.0 : 1.0 + max_abs_eigenvalue(a);
}

SampledEstimate sampled(const OutputMoments &readout, const HermitianOperator &compared,
                        const DensityState &rho, std::uint64_t n_shots, std::uint64_t seed,
                        const Tolerances &tol) {
    if (n_shots < 2) {
        throw Error(ErrorKind::InvalidArgument, "sampling needs at least two shots per state");
    }
    const double c = choose_shift(compared, rho);
    const PreparedStates prep = prepare(compared, rho, c);
    const OutputMoments meter = shifted(readout, c);
    const OutputMoments direct = shifted(direct_moments(compared, tol), c);

    SampledEstimate out;
    out.shifted = c != 0.0;
    out.shift = c;
    out.batches.push_back(sample_povm(direct, rho, n_shots, derive_seed(seed, 0), "direct@rho"));
    out.batches.push_back(sample_povm(meter, rho, n_shots, derive_seed(seed, 1), "readout@rho"));
    out.batches.push_back(sample_povm(meter, prep.rho2, n_shots, derive_seed(seed, 2), "readout@rho2"));
    out.batches.push_back(sample_povm(meter, prep.rho3, n_shots, derive_seed(seed, 3), "readout@rho3"));
    const auto &b_direct = out.batches[0];
    const auto &b_rho = out.batches[1];
    const auto &b_rho2 = out.batches[2];
    const auto &b_rho3 = out.batches[3];

    auto sq = [](double x) { return x * x; };
    auto sq_plus = [](double x) { return x * x + x; };
    auto id = [](double x) { return x; };
    out.squared = b_direct.mean_of(sq) + b_rho.mean_of(sq_plus) - prep.t3 * b_rho3.mean_of(id) +
                  prep.t2 * b_rho2.mean_of(id);
    const double n = static_cast<double>(n_shots);
    double var = b_direct.variance_of(sq) / n + b_rho.variance_of(sq_plus) / n +
                 prep.t3 * prep.t3 * b_rho3.variance_of(id) / n +
                 prep.t2 * prep.t2 * b_rho2.variance_of(id) / n;
    out.standard_error = std::sqrt(var);
    out.value = std::sqrt(std::max(0.0, out.squared));
    return out;
}

}  // namespace

std::vector<double> OutputMoments::probabilities(const DensityState &rho) const {
    std::vector<double> p;
    p.reserve(povm.size());
    for (const Matrix &e : povm) {
        p.push_back(std::max(0.0, expectation(e, rho).real()));
    }
    return p;
}

OutputMoments meter_moments(const MeasuringProcess &mp, const Tolerances &tol) {
    return probe_averaged(mp, spectral_decompose(mp.meter(), tol), Factor::Probe);
}

OutputMoments evolved_moments(const MeasuringProcess &mp, const HermitianOperator &b,
                              const Tolerances &tol) {
    if (b.dim() != mp.system_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observable does not act on the system");
    }
    return probe_averaged(mp, spectral_decompose(b, tol), Factor::System);
}

OutputMoments direct_moments(const HermitianOperator &b, const Tolerances &tol) {
    SpectralDecomposition spec = spectral_decompose(b, tol);
    return assemble(spec.eigenvalues, spec.projectors);
}

ThreeStateEstimate three_state_error_shifted(const OutputMoments &moments,
                                             const HermitianOperator &a, const DensityState &rho,
                                             double shift, const Tolerances &tol) {
    if (a.dim() != rho.dim() || moments.first.rows() != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "moments, observable and state dimensions differ");
    }
    const PreparedStates prep = prepare(a, rho, shift);
    const OutputMoments m = shifted(moments, shift);

    ThreeStateEstimate out;
    out.shifted = shift != 0.0;
    out.shift = shift;
    const double a2 = trace_real(prep.shifted_a * prep.shifted_a, rho);
    const double cross = prep.t3 * trace_real(m.first, prep.rho3) - trace_real(m.first, rho) -
                         prep.t2 * trace_real(m.first, prep.rho2);
    out.squared = a2 + trace_real(m.second, rho) - cross;
    out.value = clamped_sqrt(out.squared, tol.variance_clamp_tol, "three-state estimate");
    return out;
}

ThreeStateEstimate three_state_error(const OutputMoments &moments, const HermitianOperator &a,
                                     const DensityState &rho, const Tolerances &tol) {
    return three_state_error_shifted(moments, a, rho, choose_shift(a, rho), tol);
}

ThreeStateEstimate three_state_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                                           const DensityState &rho, const Tolerances &tol) {
    return three_state_error(evolved_moments(mp, b, tol), b, rho, tol);
}

double weak_method_error(const WeakJointDistribution &wjd, const Tolerances &tol) {
    double s = 0.0;
    for (std::size_t k = 0; k < wjd.values.size(); ++k) {
        double d = wjd.support[k].first - wjd.support[k].second;
        s += d * d * wjd.values[k].real();
    }
    return clamped_sqrt(s, tol.variance_clamp_tol, "weak-method estimate");
}

double weak_method_disturbance(const MeasuringProcess &mp, const HermitianOperator &b,
                               const DensityState &rho, const Tolerances &tol) {
    return weak_method_error(weak_disturbance_distribution(mp, b, rho, tol), tol);
}

SampledStatistics sample_povm(const OutputMoments &moments, const DensityState &rho,
                              std::uint64_t n_shots, std::uint64_t seed, const std::string &label) {
    if (n_shots < 1) {
        throw Error(ErrorKind::InvalidArgument, "n_shots must be at least 1");
    }
    std::vector<double> p = moments.probabilities(rho);
    SampledStatistics out;
    out.label = label;
    out.seed = seed;
    out.n_shots = n_shots;
    out.outcomes = moments.outcomes;
    out.counts.assign(p.size(), 0);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(p.begin(), p.end());
    for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
        ++out.counts[pick(rng)];
    }
    return out;
}

SampledStatistics sample_outcomes(const MeasuringProcess &mp, const DensityState &rho,
                                  std::uint64_t n_shots, std::uint64_t seed, const Tolerances &tol) {
    if (rho.dim() != mp.system_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state does not act on the system");
    }
    return sample_povm(meter_moments(mp, tol), rho, n_shots, seed, "meter@rho");
}

SampledEstimate three_state_error_sampled(const MeasuringProcess &mp, const HermitianOperator &a,
                                          const DensityState &rho, std::uint64_t n_shots,
                                          std::uint64_t seed, const Tolerances &tol) {
    return sampled(meter_moments(mp, tol), a, rho, n_shots, seed, tol);
}

SampledEstimate three_state_disturbance_sampled(const MeasuringProcess &mp,
                                                const HermitianOperator &b,
                                                const DensityState &rho, std::uint64_t n_shots,
                                                std::uint64_t seed, const Tolerances &tol) {
    return sampled(evolved_moments(mp, b, tol), b, rho, n_shots, seed, tol);
}

}  // namespace edrlab
