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

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace edrlab::cv {

/// Points origin + i*spacing, i = 0..size-1.
struct UniformGrid {
    double origin = 0.0;
    double spacing = 1.0;
    std::size_t size = 0;

    double point(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
    double end() const { return point(size - 1); }
    /// `size` points spanning [lo, hi] inclusive.
    static UniformGrid spanning(double lo, double hi, std::size_t size);
};

/// Wave function sampled on a uniform grid.
struct GridFunction {
    UniformGrid grid;
    std::vector<std::complex<double>> values;

    static GridFunction sample(const UniformGrid &grid,
                               const std::function<std::complex<double>(double)> &f);
    /// Real Gaussian wave function whose density |f|^2 has the given mean and variance.
    static GridFunction gaussian(const UniformGrid &grid, double mean, double variance);

    /// Trapezoid approximation of the integral of |f|^2.
    double norm_squared() const;
    void normalize();
};

/// Outcome density of the meter Qbar(dt) in the von Neumann model, sampled on
/// its own uniform grid. Integrals use the piecewise-linear interpolant of the
/// samples (the trapezoid rule, extended to arbitrary interval endpoints).
class OutcomeDistribution {
   public:
    OutcomeDistribution(UniformGrid grid, std::vector<double> density);

    const UniformGrid &grid() const { return grid_; }
    const std::vector<double> &density() const { return density_; }

    /// Pr{a < x <= b}; infinite endpoints allowed.
    double probability(double a, double b) const;
    double total() const;
    double mean() const;
    double variance() const;

   private:
    UniformGrid grid_;
    std::vector<double> density_;
};

/// Density of Qbar(dt): g(y) = integral |psi(x)|^2 |xi(y - x)|^2 dx, evaluated
/// at y = 2*origin + m*spacing so that y - x always falls on the grid.
/// Both inputs must share one grid and be normalized within 1e-8.
OutcomeDistribution von_neumann_outcome_distribution(const GridFunction &psi,
                                                     const GridFunction &xi);

/// Pr{a < x <= b} for the meter reading.
double outcome_distribution(const GridFunction &psi, const GridFunction &xi, double a, double b);

}  // namespace edrlab::cv
