// Copyright 2026 The bornverifier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "bornverifier/spin.hpp"

namespace bornv {

/// Every randomized routine takes the generator explicitly.
using Rng = std::mt19937_64;

/// Normalized vector of independent complex Gaussians (unitarily invariant).
std::vector<Complex> random_unit_vector(Rng &rng, std::size_t dim);
StateVector random_state(Rng &rng, std::vector<std::size_t> factor_dims);
StateVector random_state(std::vector<std::size_t> factor_dims, std::uint64_t seed);

/// Haar-distributed unitary via Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng &rng, std::size_t dim);

/// Uniform point on the unit sphere.
BlochVector random_direction(Rng &rng);
/// Uniform point in the Bloch ball.
BlochVector random_ball_point(Rng &rng);

double uniform01(Rng &rng);

}  // namespace bornv
