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

#include <sstream>

#include "bornverifier/coordinate.hpp"

using namespace bornv;

TEST_CASE("Gaussian interval probability approaches erf") {
    auto psi = Wavefunction1D::gaussian(0, 1, -10, 10, 100000);
    IntervalDetector det(-1, 1);
    double p = born_integral(psi, det);
    CHECK(std::abs(p - std::erf(1 / std::sqrt(2.0))) < 1e-4);
    auto d = decompose_interval(psi, det);
    CHECK(d.c1 * d.c1 == p);
    CHECK(std::abs(d.c0 * d.c0 + d.c1 * d.c1 - 1) < 1e-12);
    REQUIRE(d.phi1.has_value());
    REQUIRE(d.phi0.has_value());
}

TEST_CASE("shifted and scaled Gaussians") {
    for (double sigma : {0.5, 2.0}) {
        auto psi = Wavefunction1D::gaussian(3, sigma, 3 - 12 * sigma, 3 + 12 * sigma, 200000);
        double p = born_integral(psi, IntervalDetector(3 - 2 * sigma, 3 + 2 * sigma));
        CHECK(std::abs(p - std::erf(2 / std::sqrt(2.0))) < 1e-4);
    }
}

TEST_CASE("uniform wavefunction gives the interval fraction") {
    auto psi = Wavefunction1D::uniform(0, 1, 1000);
    // Left edges 0.000 .. 0.999; [0.25, 0.5] holds indices 250..500.
    CHECK(born_integral(psi, IntervalDetector(0.25, 0.5)) == doctest::Approx(0.251).epsilon(1e-12));
    auto none = decompose_interval(psi, IntervalDetector(0.9991, 0.9995));
    CHECK(none.c1 == 0);
    CHECK_FALSE(none.phi1.has_value());
    CHECK_THROWS_AS(decompose_interval(psi, IntervalDetector(5, 6)), std::invalid_argument);
}

TEST_CASE("isospin polarization") {
    std::vector<Complex> chi0{0.6, 0}, chi1{0.8, 0};
    auto p = isospin_polarization(chi0, chi1);
    CHECK(p.x == doctest::Approx(2 * 0.48));
    CHECK(p.y == doctest::Approx(0));
    CHECK(p.z == doctest::Approx(0.64 - 0.36));
    CHECK_THROWS(isospin_polarization(std::vector<Complex>{1, 0}, std::vector<Complex>{1, 0}));
}

TEST_CASE("isospin Born rule across modules") {
    auto psi = Wavefunction1D::gaussian(0, 1, -10, 10, 20000);
    auto r = verify_isospin_born(psi, IntervalDetector(-0.3, 1.7));
    CHECK_MESSAGE(r.passed, r.max_deviation);
    auto whole = verify_isospin_born(psi, IntervalDetector(-20, 20));
    CHECK(whole.passed);
}

TEST_CASE("reading tables") {
    std::istringstream two("# x re\n0 1\n0.5 1\n1.0 1\n1.5 1\n");
    auto a = Wavefunction1D::read(two);
    CHECK(a.size() == 4);
    CHECK(a.x_max() == doctest::Approx(2));
    CHECK(born_integral(a, IntervalDetector(0, 0.6)) == doctest::Approx(0.5));
    std::istringstream three("0 0 0.5\n1 0.5 0\n2 0.5 0\n3 0 0.5\n");
    auto b = Wavefunction1D::read(three);
    CHECK(b.values()[0] == Complex(0, 0.5));
    std::istringstream uneven("0 1\n1 1\n3 1\n");
    CHECK_THROWS_AS(Wavefunction1D::read(uneven), std::invalid_argument);
    std::istringstream mixed("0 1\n1 1 0\n");
    CHECK_THROWS_AS(Wavefunction1D::read(mixed), std::invalid_argument);
    std::istringstream junk("0 abc\n");
    CHECK_THROWS_AS(Wavefunction1D::read(junk), std::invalid_argument);
}

TEST_CASE("wavefunction validation") {
    CHECK_THROWS_AS(Wavefunction1D(0, 1, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(Wavefunction1D::uniform(1, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(Wavefunction1D::gaussian(0, 0, -1, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(IntervalDetector(1, 0), std::invalid_argument);
}
