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

#include "bornverifier/counterexamples.hpp"
#include "bornverifier/derivation.hpp"

using namespace bornv;

namespace {

std::shared_ptr<const ClickOracle> cubic(const Detector &d) {
    return std::make_shared<DistortedOracle>(std::make_shared<Detector>(d), p3_rule);
}

}  // namespace

TEST_CASE("envariance on random detectors") {
    Rng rng(41);
    for (int t = 0; t < 20; t++) {
        auto det = random_detector(rng);
        auto r = verify_envariance(det, 10, 100 + t);
        CHECK_MESSAGE(r.passed, r.max_deviation);
        CHECK(r.get("mapping_residual") < 1e-10);
    }
}

TEST_CASE("envariance with a larger environment") {
    auto r = verify_envariance(Detector::cnot_up(), 10, 3, 6);
    CHECK(r.passed);
}

TEST_CASE("lemma 1 replay") {
    Rng rng(42);
    for (int t = 0; t < 50; t++) {
        auto det = random_detector(rng);
        auto r = verify_lemma1(det, random_ball_point(rng), random_ball_point(rng), uniform01(rng));
        CHECK_MESSAGE(r.passed, r.name << " " << r.max_deviation);
        CHECK(r.get("d_betweenness_violation") <= 1e-12);
    }
    auto edge = verify_lemma1(Detector::cnot_up(), {0, 0, 1}, {0, 0, -1}, 0.0);
    CHECK(edge.passed);
}

TEST_CASE("lemma 1 convex identity matches direct probes") {
    auto det = Detector::effect(ComplexMatrix{{0.8, {0.1, -0.2}}, {{0.1, 0.2}, 0.3}});
    BlochVector p0{0.3, 0.1, -0.5}, p1{-0.2, 0.6, 0.1};
    double lambda = 0.35;
    auto mix = p0 * (1 - lambda) + p1 * lambda;
    double f0 = oracle::click(det, oracle::density(p0));
    double f1 = oracle::click(det, oracle::density(p1));
    double fm = oracle::click(det, oracle::density(mix));
    CHECK(std::abs((1 - lambda) * f0 + lambda * f1 - fm) < 1e-12);
    CHECK(verify_lemma1(det, p0, p1, lambda).passed);
}

TEST_CASE("lemma 2 midpoint and Bell balance") {
    Rng rng(43);
    for (int t = 0; t < 30; t++) {
        auto det = random_detector(rng);
        auto p = random_direction(rng);
        CHECK(verify_lemma2(det, p, -p).passed);
        CHECK(verify_lemma2(det, random_ball_point(rng), random_ball_point(rng)).passed);
    }
}

TEST_CASE("lemma 3 dyadic profile") {
    auto det = Detector::projective({0, 0, 1});
    auto r = verify_lemma3_dyadic(det, {0, 0, -1}, {0, 0, 1}, 7);
    CHECK(r.passed);
    REQUIRE(r.dyadic.has_value());
    CHECK(r.dyadic->depth == 20);
    CHECK(r.dyadic->samples.size() == 100);
    for (const auto &s : r.dyadic->samples) {
        CHECK(std::abs(s.f - s.x) <= s.bound + 1e-9);
    }
    DyadicOptions shallow{8, 6, 30};
    auto r8 = verify_lemma3_dyadic(det, {0.5, 0, 0}, {0, 0.5, 0.5}, 8, shallow);
    CHECK(r8.passed);
    CHECK(r8.dyadic->samples.size() == 30);
    CHECK(r8.dyadic->samples.front().bound == std::ldexp(1.0, -8));
}

TEST_CASE("lemma 3 on a flat segment checks constancy") {
    auto det = Detector::effect(ComplexMatrix::identity(2) * 0.3);
    auto r = verify_lemma3_dyadic(det, {0, 0, 1}, {1, 0, 0}, 1);
    CHECK(r.passed);
    CHECK_NOTHROW(r.get("flat_constancy"));
}

TEST_CASE("theorem 1 on both model kinds") {
    Rng rng(44);
    for (int t = 0; t < 40; t++) {
        auto det = t % 2 ? random_effect_detector(rng) : random_ancilla_detector(rng);
        auto r = verify_theorem1(det, 100, 500 + t);
        CHECK_MESSAGE(r.passed, r.max_deviation);
    }
}

TEST_CASE("theorem 2 ideal and non-ideal devices") {
    Rng rng(45);
    auto ideal = verify_theorem2(Detector::projective(random_direction(rng)), 200, 1);
    CHECK(ideal.passed);
    CHECK(ideal.get("ideal") == 1);
    auto noisy = verify_theorem2(Detector::effect(ComplexMatrix{{0.9, 0}, {0, 0.1}}), 200, 2);
    CHECK(noisy.passed);
    CHECK(noisy.get("ideal") == 0);
    auto constant = verify_theorem2(Detector::effect(ComplexMatrix::identity(2) * 0.3), 50, 3);
    CHECK(constant.passed);
}

TEST_CASE("a distorted response is caught") {
    auto base = Detector::projective({0.6, 0, 0.8});
    auto bad = cubic(base);
    CHECK_FALSE(verify_lemma2(*bad, {0, 0, 1}, {0.6, 0, -0.8}).passed);
    CHECK_FALSE(verify_theorem1(*bad, 50, 1).passed);
    CHECK_FALSE(verify_lemma3_dyadic(*bad, {0.6, 0, 0.8}, {-0.6, 0, -0.8}, 1).passed);
}

TEST_CASE("full suite defaults") {
    auto reports = run_full_suite(42);
    CHECK(reports.size() > 100);
    for (std::size_t k = 1; k < reports.size(); k++) {
        CHECK(reports[k - 1].name < reports[k].name);
    }
    for (const auto &r : reports) {
        CHECK_MESSAGE(r.passed, r.name << " " << r.max_deviation);
    }
}

TEST_CASE("full suite subsets, depth, injection and tolerance") {
    SuiteOptions only;
    only.subset = "lemma3";
    only.depth = 24;
    auto l3 = run_full_suite(42, kDefaultTolerance, only);
    REQUIRE_FALSE(l3.empty());
    int with_profile = 0;
    for (const auto &r : l3) {
        CHECK(r.name.rfind("lemma3/", 0) == 0);
        bool flat = !r.notes.empty() && r.notes[0].rfind("flat segment", 0) == 0;
        if (!flat) {
            REQUIRE(r.dyadic.has_value());
            CHECK(r.dyadic->depth == 24);
            with_profile++;
        }
    }
    CHECK(with_profile > 0);
    SuiteOptions two;
    two.subset = "theorem2,identity/";
    for (const auto &r : run_full_suite(42, kDefaultTolerance, two)) {
        CHECK((r.name.rfind("theorem2/", 0) == 0 || r.name.rfind("identity/", 0) == 0));
    }
    SuiteOptions inj;
    inj.inject = Injection::Cubic3;
    inj.subset = "lemma2";
    bool any_fail = false;
    for (const auto &r : run_full_suite(42, kDefaultTolerance, inj)) {
        any_fail = any_fail || !r.passed;
    }
    CHECK(any_fail);
    SuiteOptions sub;
    sub.subset = "theorem1/sg";
    auto zero = run_full_suite(42, 0.0, sub);
    REQUIRE(zero.size() == 1);
    CHECK_FALSE(zero[0].passed);
}

TEST_CASE("seeds are stable and name-dependent") {
    CHECK(derive_seed(42, "a") == derive_seed(42, "a"));
    CHECK(derive_seed(42, "a") != derive_seed(42, "b"));
    CHECK(derive_seed(41, "a") != derive_seed(42, "a"));
    auto b1 = standard_detector_battery(42);
    auto b2 = standard_detector_battery(42);
    REQUIRE(b1.size() == b2.size());
    for (std::size_t k = 0; k < b1.size(); k++) {
        CHECK(b1[k].name == b2[k].name);
        CHECK(*b1[k].detector == *b2[k].detector);
    }
}
