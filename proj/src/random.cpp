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

#include "bornverifier/random.hpp"

#include <cmath>

namespace bornv {

namespace {

Complex gaussian(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

}  // namespace

double uniform01(Rng &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::vector<Complex> random_unit_vector(Rng &rng, std::size_t dim) {
    std::vector<Complex> v(dim);
    double n = 0;
    while (n < 1e-8) {
        for (auto &z : v) {
            z = gaussian(rng);
        }
        n = norm(v);
    }
    for (auto &z : v) {
        z /= n;
    }
    return v;
}

StateVector random_state(Rng &rng, std::vector<std::size_t> factor_dims) {
    std::size_t total = checked_total_dim(factor_dims);
    return StateVector(Ket(std::move(factor_dims), random_unit_vector(rng, total)));
}

StateVector random_state(std::vector<std::size_t> factor_dims, std::uint64_t seed) {
    Rng rng(seed);
    return random_state(rng, std::move(factor_dims));
}

ComplexMatrix random_unitary(Rng &rng, std::size_t dim) {
    // Columns orthonormalized in order; with Gaussian input this is the Haar QR construction.
    std::vector<std::vector<Complex>> cols;
    while (cols.size() < dim) {
        std::vector<Complex> v(dim);
        for (auto &z : v) {
            z = gaussian(rng);
        }
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &c : cols) {
                Complex overlap = inner(c, v);
                for (std::size_t i = 0; i < dim; i++) {
                    v[i] -= overlap * c[i];
                }
            }
        }
        double n = norm(v);
        if (n < 1e-8) {
            continue;
        }
        for (auto &z : v) {
            z /= n;
        }
        cols.push_back(std::move(v));
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t c = 0; c < dim; c++) {
        for (std::size_t r = 0; r < dim; r++) {
            u(r, c) = cols[c][r];
        }
    }
    return u;
}

BlochVector random_direction(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        BlochVector v{n(rng), n(rng), n(rng)};
        double len = v.norm();
        if (len > 1e-8) {
            return v * (1 / len);
        }
    }
}

BlochVector random_ball_point(Rng &rng) {
    BlochVector dir = random_direction(rng);
    return dir * std::cbrt(uniform01(rng));
}

}  // namespace bornv
