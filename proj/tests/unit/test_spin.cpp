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

#include "doctest.h"
#include "oracles.hpp"

#include "bornverifier/random.hpp"
#include "bornverifier/spin.hpp"

using namespace bornv;

TEST_CASE("reduced density and polarization agree with the Pauli expectation oracle") {
    Rng rng(11);
    for (int t = 0; t < 300; t++) {
        std::vector<std::size_t> dims{3, 2, 2};
        auto psi = random_state(rng, dims);
        for (std::size_t f : {1u, 2u}) {
            auto rho = reduced_density(psi, f);
            auto ref = oracle::reduced_spin(oracle::vec(psi), dims, f);
            CHECK(oracle::max_abs(oracle::mat(rho.matrix()) - ref) < 1e-12);
            auto p = bloch_polarization(psi, f);
            CHECK(p.max_abs_diff(rho.bloch()) < 1e-12);
        }
    }
}

TEST_CASE("polarization requires a spin factor") {
    Rng rng(12);
    auto psi = random_state(rng, {3, 2});
    CHECK_THROWS_AS(bloch_polarization(psi, 0), std::invalid_argument);
    CHECK_THROWS_AS(bloch_polarization(psi, 5), std::out_of_range);
}

TEST_CASE("Schmidt decomposition matches the singular values") {
    Rng rng(13);
    for (int t = 0; t < 500; t++) {
        std::size_t d = 2 + t % 4;
        auto psi = random_state(rng, {2, d});
        auto s = schmidt_decompose(psi);
        oracle::Mat c(2, static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < 2; i++) {
            for (std::size_t e = 0; e < d; e++) {
                c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e)) = psi[i * d + e];
            }
        }
        Eigen::JacobiSVD<oracle::Mat> svd(c);
        CHECK(std::abs(s.c1 - svd.singularValues()(0)) < 1e-10);
        CHECK(std::abs(s.c2 - svd.singularValues()(1)) < 1e-10);
        CHECK(max_abs_diff(s.reconstruct().amplitudes, psi.amplitudes()) < 1e-10);
        CHECK(std::abs(inner(s.b1, s.b2)) < 1e-10);
        CHECK(std::abs(inner(s.a1, s.a2)) < 1e-10);
    }
}

TEST_CASE("Schmidt decomposition of a product state completes b2") {
    auto psi = StateVector({2, 3}, {0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
    auto s = schmidt_decompose(psi);
    CHECK(s.c1 == doctest::Approx(1));
    CHECK(s.c2 == doctest::Approx(0).epsilon(1e-15));
    CHECK(std::abs(norm(s.b2) - 1) < 1e-12);
    CHECK(std::abs(inner(s.b1, s.b2)) < 1e-12);
    CHECK_THROWS_AS(schmidt_decompose(StateVector({2, 2, 2}, std::vector<Complex>(8, 1 / std::sqrt(8.0)))),
                    std::invalid_argument);
}

TEST_CASE("purify reproduces the polarization") {
    Rng rng(14);
    for (int t = 0; t < 500; t++) {
        auto p = random_ball_point(rng);
        auto psi = purify(p);
        CHECK(bloch_polarization(psi, 0).max_abs_diff(p) < 1e-12);
    }
    CHECK(bloch_polarization(purify({0, 0, 0}), 0).norm() < 1e-15);
    CHECK_THROWS_AS(purify({1, 1, 0}), std::invalid_argument);
}

TEST_CASE("spinor_along is the +1 eigenvector of n.sigma") {
    Rng rng(15);
    for (int t = 0; t < 200; t++) {
        auto n = random_direction(rng);
        auto phi = spinor_along(n);
        oracle::Mat ns = n.x * oracle::sigma(0) + n.y * oracle::sigma(1) + n.z * oracle::sigma(2);
        oracle::Vec v = oracle::vec(phi);
        CHECK(((ns * v) - v).norm() < 1e-12);
    }
    CHECK_THROWS_AS(spinor_along({0, 0, 0.5}), std::invalid_argument);
}

TEST_CASE("envariance unitary maps one orthonormal pair onto another") {
    Rng rng(16);
    auto u = random_unitary(rng, 4);
    auto v = random_unitary(rng, 4);
    std::vector<Complex> a(4), b(4), c(4), d(4);
    for (std::size_t i = 0; i < 4; i++) {
        a[i] = u(i, 0);
        b[i] = u(i, 1);
        c[i] = v(i, 0);
        d[i] = v(i, 1);
    }
    auto w = envariance_unitary(a, b, c, d);
    CHECK(w.is_unitary(1e-10));
    CHECK(max_abs_diff(w.apply(a), c) < 1e-10);
    CHECK(max_abs_diff(w.apply(b), d) < 1e-10);
    CHECK_THROWS_AS(envariance_unitary(a, a, c, d), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
    CHECK_THROWS_AS(DensityMatrix2(ComplexMatrix{{1, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix2(ComplexMatrix{{1.5, 0}, {0, -0.5}}), std::invalid_argument);
    auto rho = DensityMatrix2::from_bloch({0, 0, 1});
    CHECK(rho.expectation(basis_vector(2, 0)) == doctest::Approx(1));
}
