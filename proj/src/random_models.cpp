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

#include "edrlab/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edrlab/error.hpp"

namespace edrlab {

namespace {

Complex complex_normal(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double re = normal(rng);
    double im = normal(rng);
    return Complex(re, im) / std::sqrt(2.0);
}

Matrix ginibre(Index rows, Index cols, Rng &rng) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            g(i, j) = complex_normal(rng);
        }
    }
    return g;
}

Index uniform_index(Index lo, Index hi, Rng &rng) {
    std::uniform_int_distribution<Index> d(lo, hi);
    return d(rng);
}

double uniform(double lo, double hi, Rng &rng) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

// Unitary whose first column is the unit vector v; remaining columns random.
Matrix completing_unitary(const Vector &v, Rng &rng) {
    const Index n = v.size();
    Matrix cols = ginibre(n, n, rng);
    cols.col(0) = v;
    Eigen::HouseholderQR<Matrix> qr(cols);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    // QR fixes the first column only up to a phase.
    Complex phase = q.col(0).dot(v);
    q.col(0) *= phase / std::abs(phase);
    return q;
}

// Unitary X with X xi = e_target.
Matrix steering_unitary(const Vector &xi, Index target, Rng &rng) {
    Vector e = Vector::Zero(xi.size());
    e(target) = 1.0;
    return completing_unitary(e, rng) * completing_unitary(xi, rng).adjoint();
}

// Density operator supported in the column span of `basis` (orthonormal).
Matrix density_in(const Matrix &basis, Rng &rng) {
    Index rank = uniform_index(1, basis.cols(), rng);
    Matrix g = basis * ginibre(basis.cols(), rank, rng);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Matrix haar_unitary(Index dim, Rng &rng) {
    Matrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < dim; ++k) {
        Complex d = r(k, k);
        q.col(k) *= d / std::abs(d);
    }
    return q;
}

HermitianOperator random_hermitian(Index dim, Rng &rng) {
    Matrix g = ginibre(dim, dim, rng);
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

DensityState random_density(Index dim, Rng &rng, Index rank) {
    if (rank <= 0) {
        rank = uniform_index(1, dim, rng);
    }
    Matrix g = ginibre(dim, rank, rng);
    Matrix rho = g * g.adjoint();
    return DensityState(rho / rho.trace().real());
}

Vector random_unit_vector(Index dim, Rng &rng) {
    Vector v = ginibre(dim, 1, rng).col(0);
    return v.normalized();
}

MeasuringProcess random_measuring_process(Index system_dim, Index probe_dim, Rng &rng) {
    Vector xi = random_unit_vector(probe_dim, rng);
    UnitaryOperator u(haar_unitary(system_dim * probe_dim, rng));
    HermitianOperator m = random_hermitian(probe_dim, rng);
    return MeasuringProcess(system_dim, xi, u, m);
}

const char *family_name(InstanceFamily family) {
    switch (family) {
        case InstanceFamily::Generic:
            return "generic";
        case InstanceFamily::PreciseOnSupport:
            return "precise-on-support";
        case InstanceFamily::LeakyPrecise:
            return "leaky-precise";
    }
    return "unknown";
}

RandomInstance random_instance(InstanceFamily family, Index ds, Index dp, Rng &rng) {
    if (family == InstanceFamily::Generic) {
        MeasuringProcess mp = random_measuring_process(ds, dp, rng);
        HermitianOperator a = random_hermitian(ds, rng);
        HermitianOperator b = random_hermitian(ds, rng);
        DensityState rho = random_density(ds, rng);
        return RandomInstance{family, std::move(mp), std::move(a), std::move(b), std::move(rho)};
    }

    // Spectrum of A: distinct values, optionally with one doubled value.
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> distinct;
    Index n_distinct = ds;
    if (ds >= 3 && uniform(0.0, 1.0, rng) < 0.5) {
        n_distinct = ds - 1;
    }
    while (static_cast<Index>(distinct.size()) < n_distinct) {
        double x = std::round(normal(rng) * 100.0) / 100.0;
        bool fresh = std::none_of(distinct.begin(), distinct.end(),
                                  [x](double y) { return std::abs(x - y) < 0.05; });
        if (fresh) {
            distinct.push_back(x);
        }
    }
    // label[i] = index into `distinct` for eigenvector i.
    std::vector<Index> label(static_cast<std::size_t>(ds));
    for (Index i = 0; i < ds; ++i) {
        label[static_cast<std::size_t>(i)] = std::min(i, n_distinct - 1);
    }

    // Values measured exactly: the first `n_exact` distinct values.
    Index max_exact = std::min(n_distinct, dp);
    if (family == InstanceFamily::LeakyPrecise) {
        max_exact = std::min(max_exact, n_distinct - 1);
    }
    const Index n_exact = uniform_index(1, max_exact, rng);

    const Matrix v = haar_unitary(ds, rng);
    Matrix diag_a = Matrix::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i) {
        diag_a(i, i) = distinct[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])];
    }
    HermitianOperator a(v * diag_a * v.adjoint());

    // Meter: probe basis state k < n_exact reads distinct[k].
    Matrix meter = Matrix::Zero(dp, dp);
    for (Index k = 0; k < dp; ++k) {
        meter(k, k) = k < n_exact ? distinct[static_cast<std::size_t>(k)]
                                  : std::round(normal(rng) * 100.0) / 100.0 + 5.0;
    }
    const Vector xi = random_unit_vector(dp, rng);

    // Controlled coupling in A's eigenbasis: value x steers xi onto the meter
    // state reading x when x is measured exactly, and scrambles it otherwise.
    std::vector<Matrix> steer;
    for (Index x = 0; x < n_distinct; ++x) {
        steer.push_back(x < n_exact ? steering_unitary(xi, x, rng) : haar_unitary(dp, rng));
    }
    Matrix controlled = Matrix::Zero(ds * dp, ds * dp);
    for (Index i = 0; i < ds; ++i) {
        Matrix proj = Matrix::Zero(ds, ds);
        proj(i, i) = 1.0;
        controlled += tensor(proj, steer[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])]);
    }
    // A system unitary commuting with A, applied first.
    Matrix phases = Matrix::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i) {
        phases(i, i) = std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi, rng));
    }
    Matrix vp = tensor(v, identity(dp));
    Matrix u = vp * controlled * tensor(phases, identity(dp)) * vp.adjoint();
    MeasuringProcess mp(ds, xi, UnitaryOperator(u), HermitianOperator(meter));

    // rho inside the exactly measured spectral block, plus optional leakage.
    std::vector<Index> inside;
    for (Index i = 0; i < ds; ++i) {
        if (label[static_cast<std::size_t>(i)] < n_exact) {
            inside.push_back(i);
        }
    }
    Matrix block(ds, static_cast<Index>(inside.size()));
    for (std::size_t c = 0; c < inside.size(); ++c) {
        block.col(static_cast<Index>(c)) = v.col(inside[c]);
    }
    Matrix rho = density_in(block, rng);
    if (family == InstanceFamily::LeakyPrecise) {
        double w = uniform(0.1, 0.5, rng);
        rho = (1.0 - w) * rho + w * random_density(ds, rng, ds).matrix();
    }
    HermitianOperator b = random_hermitian(ds, rng);
    return RandomInstance{family, std::move(mp), std::move(a), std::move(b), DensityState(rho)};
}

RandomInstance random_instance(std::uint64_t base_seed, std::uint64_t index) {
    Rng rng(derive_seed(base_seed, index));
    static constexpr InstanceFamily kCycle[] = {InstanceFamily::Generic,
                                                InstanceFamily::PreciseOnSupport,
                                                InstanceFamily::LeakyPrecise};
    InstanceFamily family = kCycle[index % 3];
    Index ds = uniform_index(2, 4, rng);
    Index dp = uniform_index(2, 3, rng);
    return random_instance(family, ds, dp, rng);
}

cv::GaussianState4 random_gaussian_state(Rng &rng, double hbar, bool unbiased_probe) {
    std::normal_distribution<double> normal(0.0, 1.0);
    auto mode = [&](bool zero_mean) {
        double nu = uniform(0.0, 1.0, rng) < 0.25 ? 1.0 : 1.0 + uniform(0.0, 2.0, rng);
        double r = uniform(-1.5, 1.5, rng);
        double theta = uniform(0.0, std::numbers::pi, rng);
        double c = std::cos(theta), s = std::sin(theta);
        double a = std::exp(r), b = std::exp(-r);
        double scale = 0.5 * hbar * nu;
        cv::ModeMoments m;
        m.var_q = scale * (c * c * a + s * s * b);
        m.var_p = scale * (s * s * a + c * c * b);
        m.cov_qp = scale * c * s * (a - b);
        double mq = normal(rng);
        double mp = normal(rng);
        m.mean_q = zero_mean ? 0.0 : mq;
        m.mean_p = zero_mean ? 0.0 : mp;
        return m;
    };
    cv::ModeMoments object = mode(false);
    cv::ModeMoments probe = mode(unbiased_probe);
    return cv::GaussianState4::product(object, probe, hbar);
}

}  // namespace edrlab
