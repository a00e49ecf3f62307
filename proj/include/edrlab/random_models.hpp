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
#include <random>

#include "edrlab/gaussian_cv.hpp"
#include "edrlab/measurement.hpp"

// Seeded generators for randomized instances. Each instance draws from its
// own engine seeded with derive_seed(base, index), so results do not depend
// on evaluation order or thread count.

namespace edrlab {

/// splitmix64 finalizer of base + stream * golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

using Rng = std::mt19937_64;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal moved into Q.
Matrix haar_unitary(Index dim, Rng &rng);
/// Gaussian unitary ensemble sample, (G + G^dagger)/2.
HermitianOperator random_hermitian(Index dim, Rng &rng);
/// Normalized Wishart state G G^dagger / Tr with G of shape dim x rank.
DensityState random_density(Index dim, Rng &rng, Index rank = 0);
Vector random_unit_vector(Index dim, Rng &rng);

/// Fully random process: Haar coupling, random probe vector and meter.
MeasuringProcess random_measuring_process(Index system_dim, Index probe_dim, Rng &rng);

enum class InstanceFamily {
    Generic,           // Haar coupling
    PreciseOnSupport,  // measures A exactly on a spectral block that contains rho
    LeakyPrecise,      // as above, but rho has weight outside the exact block
};

const char *family_name(InstanceFamily family);

/// A randomized (process, A, B, rho) quadruple for the property suites.
struct RandomInstance {
    InstanceFamily family;
    MeasuringProcess process;
    HermitianOperator a;
    HermitianOperator b;
    DensityState rho;
};

/// System dimension in [2, 4], probe dimension in [2, 3]; the family cycles
/// with the index so every family is represented.
RandomInstance random_instance(std::uint64_t base_seed, std::uint64_t index);

/// Same, but always of the given family and dimensions.
RandomInstance random_instance(InstanceFamily family, Index system_dim, Index probe_dim, Rng &rng);

/// Valid Gaussian product state: random means, each mode a thermal squeezed
/// state (hbar/2) nu R(theta) diag(e^{r}, e^{-r}) R(theta)^T with nu >= 1.
/// `unbiased_probe` zeroes the probe means.
cv::GaussianState4 random_gaussian_state(Rng &rng, double hbar = 1.0, bool unbiased_probe = false);

}  // namespace edrlab
