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

#include "edrlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "edrlab/error.hpp"

namespace edrlab::cv {

namespace {

constexpr double kNormTol = 1e-8;

// Integral of the piecewise-linear interpolant of w(i)*f(x_i) over [a, b]
// clipped to the grid. `weight` multiplies each sample (1 for probability,
// x for the first moment and so on) before interpolation.
template <class Fn>
double integrate_linear(const UniformGrid &grid, const std::vector<double> &density, double a,
                        double b, Fn weight) {
    if (grid.size < 2) {
        return 0.0;
    }
    const double lo = std::max(a, grid.origin);
    const double hi = std::min(b, grid.end());
    if (!(hi > lo)) {
        return 0.0;
    }
    const double h = grid.spacing;
    auto value = [&](std::size_t i) { return weight(grid.point(i)) * density[i]; };
    auto interp = [&](double x) {
        double t = (x - grid.origin) / h;
        auto i = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0,
                                                     static_cast<double>(grid.size - 2)));
        double frac = t - static_cast<double>(i);
        return (1.0 - frac) * value(i) + frac * value(i + 1);
    };

    // Cells fully inside [lo, hi] use the plain trapezoid; the partial end
    // cells integrate the interpolant exactly.
    auto first_full = static_cast<std::size_t>(std::ceil((lo - grid.origin) / h - 1e-12));
    auto last_full = static_cast<std::size_t>(std::floor((hi - grid.origin) / h + 1e-12));
    first_full = std::min(first_full, grid.size - 1);
    last_full = std::min(last_full, grid.size - 1);

    double sum = 0.0;
    if (first_full > last_full) {
        return 0.5 * (interp(lo) + interp(hi)) * (hi - lo);
    }
    for (std::size_t i = first_full; i < last_full; ++i) {
        sum += 0.5 * (value(i) + value(i + 1)) * h;
    }
    const double x_first = grid.point(first_full);
    const double x_last = grid.point(last_full);
    if (x_first > lo) {
        sum += 0.5 * (interp(lo) + value(first_full)) * (x_first - lo);
    }
    if (hi > x_last) {
        sum += 0.5 * (value(last_full) + interp(hi)) * (hi - x_last);
    }
    return sum;
}

void require_grid(const UniformGrid &grid) {
    if (grid.size < 2 || !(grid.spacing > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "grid needs at least two points and positive spacing");
    }
}

}  // namespace

UniformGrid UniformGrid::spanning(double lo, double hi, std::size_t size) {
    if (size < 2 || !(hi > lo)) {
        throw Error(ErrorKind::InvalidArgument, "grid needs at least two points and hi > lo");
    }
    return UniformGrid{lo, (hi - lo) / static_cast<double>(size - 1), size};
}

GridFunction GridFunction::sample(const UniformGrid &grid,
                                  const std::function<std::complex<double>(double)> &f) {
    require_grid(grid);
    GridFunction out{grid, {}};
    out.values.reserve(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i) {
        out.values.push_back(f(grid.point(i)));
    }
    return out;
}

GridFunction GridFunction::gaussian(const UniformGrid &grid, double mean, double variance) {
    if (!(variance > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "Gaussian variance must be positive");
    }
    // |f|^2 = N(mean, variance)  =>  f = (2 pi v)^(-1/4) exp(-(x - m)^2 / (4 v)).
    const double amp = std::pow(2.0 * std::numbers::pi * variance, -0.25);
    return sample(grid, [=](double x) {
        double z = x - mean;
        return std::complex<double>(amp * std::exp(-z * z / (4.0 * variance)), 0.0);
    });
}

double GridFunction::norm_squared() const {
    std::vector<double> density(values.size());
    std::transform(values.begin(), values.end(), density.begin(),
                   [](const std::complex<double> &v) { return std::norm(v); });
    return integrate_linear(grid, density, -std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity(), [](double) { return 1.0; });
}

void GridFunction::normalize() {
    double n = std::sqrt(norm_squared());
    if (!(n > 0.0)) {
        throw Error(ErrorKind::Numeric, "cannot normalize a zero grid function");
    }
    for (auto &v : values) {
        v /= n;
    }
}

OutcomeDistribution::OutcomeDistribution(UniformGrid grid, std::vector<double> density)
    : grid_(grid), density_(std::move(density)) {
    require_grid(grid_);
    if (density_.size() != grid_.size) {
        throw Error(ErrorKind::DimensionMismatch, "density length does not match its grid");
    }
}

double OutcomeDistribution::probability(double a, double b) const {
    return integrate_linear(grid_, density_, a, b, [](double) { return 1.0; });
}

double OutcomeDistribution::total() const {
    return probability(-std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity());
}

double OutcomeDistribution::mean() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return integrate_linear(grid_, density_, -inf, inf, [](double y) { return y; }) / total();
}

double OutcomeDistribution::variance() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double m = mean();
    return integrate_linear(grid_, density_, -inf, inf,
                            [m](double y) { return (y - m) * (y - m); }) /
           total();
}

OutcomeDistribution von_neumann_outcome_distribution(const GridFunction &psi,
                                                     const GridFunction &xi) {
    require_grid(psi.grid);
    const UniformGrid &g = psi.grid;
    if (xi.grid.size != g.size || std::abs(xi.grid.origin - g.origin) > 1e-12 ||
        std::abs(xi.grid.spacing - g.spacing) > 1e-12 * g.spacing) {
        throw Error(ErrorKind::DimensionMismatch, "object and probe wave functions must share one grid");
    }
    if (psi.values.size() != g.size || xi.values.size() != g.size) {
        throw Error(ErrorKind::DimensionMismatch, "grid function length does not match its grid");
    }
    for (const GridFunction *f : {&psi, &xi}) {
        double n = f->norm_squared();
        if (std::abs(n - 1.0) > kNormTol) {
            std::ostringstream ss;
            ss << "wave function is not normalized: trapezoid norm^2 = " << n;
            throw Error(ErrorKind::Validation, ss.str());
        }
    }

    const std::size_t n = g.size;
    const double h = g.spacing;
    std::vector<double> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;  // trapezoid weights in x
        p[i] = w * std::norm(psi.values[i]);
        q[i] = std::norm(xi.values[i]);
    }
    // y_m = x_i + z_k with x_i, z_k on the shared grid: m = i + k.
    std::vector<double> density(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] == 0.0) {
            continue;
        }
        for (std::size_t k = 0; k < n; ++k) {
            density[i + k] += p[i] * q[k];
        }
    }
    return OutcomeDistribution(UniformGrid{2.0 * g.origin, h, 2 * n - 1}, std::move(density));
}

double outcome_distribution(const GridFunction &psi, const GridFunction &xi, double a, double b) {
    return von_neumann_outcome_distribution(psi, xi).probability(a, b);
}

}  // namespace edrlab::cv
