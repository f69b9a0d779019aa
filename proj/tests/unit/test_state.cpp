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
#include "bornverifier/state.hpp"

using namespace bornv;

TEST_CASE("basis indexing is big-endian") {
    const std::size_t digits[] = {1, 0, 2};
    auto s = StateVector::basis({2, 2, 3}, digits);
    // index = 1*6 + 0*3 + 2
    CHECK(s[8] == Complex(1));
    CHECK(factor_digit(s.dims(), 8, 0) == 1);
    CHECK(factor_digit(s.dims(), 8, 1) == 0);
    CHECK(factor_digit(s.dims(), 8, 2) == 2);
}

TEST_CASE("S_lambda amplitudes") {
    auto s = StateVector::s_lambda(0.25);
    CHECK(s[0].real() == doctest::Approx(std::sqrt(0.75)));
    CHECK(s[3].real() == doctest::Approx(0.5));
    CHECK(std::abs(s[1]) == 0);
    CHECK_THROWS_AS(StateVector::s_lambda(1.5), std::invalid_argument);
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(StateVector({2}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({2, 2}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({1}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(checked_total_dim(std::vector<std::size_t>(11, 2)), std::length_error);
    CHECK_THROWS_AS(StateVector::normalized(Ket({2}, {0.0, 0.0})), std::invalid_argument);
    CHECK_NOTHROW(StateVector({2}, {1.0 + 1e-12, 0.0}));
    CHECK(checked_total_dim(std::vector<std::size_t>(10, 2)) == 1024);
}

TEST_CASE("tensor products follow the Kronecker layout") {
    Rng rng(7);
    auto a = random_state(rng, {2});
    auto b = random_state(rng, {3});
    auto ab = tensor_product(a, b);
    CHECK(ab.dims().size() == 2);
    CHECK((oracle::vec(ab) - oracle::kron(oracle::vec(a), oracle::vec(b))).norm() < 1e-14);
}

TEST_CASE("apply_on_factors agrees with the embedded operator") {
    Rng rng(8);
    for (int t = 0; t < 100; t++) {
        auto psi = random_state(rng, {2, 3, 2});
        auto u = random_unitary(rng, 2);
        for (std::size_t f : {0u, 2u}) {
            const std::size_t fs[] = {f};
            auto out = apply_on_factors(psi.ket(), fs, u);
            oracle::Vec ref = oracle::embed(oracle::mat(u), {2, 3, 2}, f) * oracle::vec(psi);
            CHECK((oracle::vec(out.amplitudes) - ref).norm() < 1e-12);
        }
        // Two factors listed out of order: operator is big-endian over (2, 0).
        auto u4 = random_unitary(rng, 4);
        const std::size_t pair[] = {2, 0};
        auto out = apply_on_factors(psi.ket(), pair, u4);
        // Reference: swap factors so that (2, 0) come first, apply u4 (x) I, swap back.
        const std::size_t order[] = {2, 0, 1};
        auto permuted = permute_factors(psi.ket(), order);
        oracle::Vec ref = oracle::kron(oracle::mat(u4), oracle::identity(3)) * oracle::vec(permuted.amplitudes);
        Ket back({2, 2, 3}, std::vector<Complex>(ref.data(), ref.data() + ref.size()));
        const std::size_t inverse[] = {1, 2, 0};
        auto restored = permute_factors(back, inverse);
        CHECK(max_abs_diff(restored.amplitudes, out.amplitudes) < 1e-12);
    }
}

TEST_CASE("apply_on_factors rejects bad arguments") {
    auto psi = StateVector::s_lambda(0.5);
    const std::size_t bad[] = {2};
    CHECK_THROWS_AS(apply_on_factors(psi.ket(), bad, pauli::X()), std::out_of_range);
    const std::size_t twice[] = {0, 0};
    CHECK_THROWS_AS(apply_on_factors(psi.ket(), twice, ComplexMatrix::identity(4)), std::invalid_argument);
    const std::size_t one[] = {0};
    CHECK_THROWS_AS(apply_on_factors(psi.ket(), one, ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("permute_factors reorders digits") {
    const std::size_t digits[] = {1, 2};
    auto s = StateVector::basis({2, 3}, digits);
    const std::size_t order[] = {1, 0};
    auto p = permute_factors(s.ket(), order);
    CHECK(p.dims == std::vector<std::size_t>{3, 2});
    // digits (2, 1) -> index 2*2 + 1
    CHECK(p.amplitudes[5] == Complex(1));
}

TEST_CASE("describe_dims") {
    const std::size_t d[] = {2, 4};
    CHECK(describe_dims(d) == "[2x4]");
}
