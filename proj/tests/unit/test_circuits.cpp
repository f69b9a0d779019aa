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

#include "bornverifier/circuits.hpp"

using namespace bornv;

namespace {

// Density-matrix replay of a circuit: selected outcomes project, the rest dephase.
struct DensityOracle {
    std::vector<std::size_t> dims;
    oracle::Mat rho;

    void gate(const oracle::Mat &u_full) { rho = u_full * rho * u_full.adjoint(); }

    void kraus(const std::vector<oracle::Mat> &ops, std::optional<std::size_t> selected) {
        if (selected) {
            rho = ops[*selected] * rho * ops[*selected].adjoint();
            return;
        }
        oracle::Mat out = oracle::Mat::Zero(rho.rows(), rho.cols());
        for (const auto &k : ops) {
            out += k * rho * k.adjoint();
        }
        rho = out;
    }
};

oracle::Mat op_sqrt(const oracle::Mat &m) {
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("Bell state is balanced under Stern-Gerlach") {
    auto bell = StateVector::s_lambda(0.5);
    auto r = sg_measure(bell, 0);
    CHECK(std::abs(r[0].probability - 0.5) < 1e-12);
    CHECK(std::abs(r[1].probability - 0.5) < 1e-12);
    REQUIRE(r[0].post_state);
    CHECK(std::abs(std::abs((*r[0].post_state)[0]) - 1) < 1e-12);
}

TEST_CASE("sg_measure on a definite state leaves the other branch empty") {
    auto r = sg_measure(StateVector::up(), 0);
    CHECK(r[0].probability == doctest::Approx(1));
    CHECK_FALSE(r[1].post_state.has_value());
    CHECK_THROWS_AS(sg_measure(StateVector::up(), 1), std::out_of_range);
}

TEST_CASE("random circuits agree with a density-matrix replay") {
    Rng rng(31);
    for (int t = 0; t < 200; t++) {
        std::vector<std::size_t> dims{2, 2, 3};
        auto psi = random_state(rng, dims);
        Circuit c(psi);
        DensityOracle ref{dims, oracle::vec(psi) * oracle::vec(psi).adjoint()};
        OutcomeQuery q;
        int n_steps = 2 + static_cast<int>(rng() % 5);
        for (int s = 0; s < n_steps; s++) {
            std::size_t wire = rng() % 2;
            if (rng() % 2 == 0) {
                auto u = random_unitary(rng, 2);
                c = c.gate({wire}, u);
                ref.gate(oracle::embed(oracle::mat(u), dims, wire));
                continue;
            }
            std::string label = "m" + std::to_string(s);
            std::vector<oracle::Mat> kraus;
            bool sg = rng() % 2 == 0;
            if (sg) {
                oracle::Mat pu = oracle::Mat::Zero(2, 2), pd = oracle::Mat::Zero(2, 2);
                pu(0, 0) = 1;
                pd(1, 1) = 1;
                kraus = {oracle::embed(pu, dims, wire), oracle::embed(pd, dims, wire)};
                c = c.measure(wire, SternGerlach{}, label);
            } else {
                auto det = std::make_shared<const Detector>(random_effect_detector(rng));
                oracle::Mat m = oracle::effect_of(*det);
                kraus = {oracle::embed(op_sqrt(m), dims, wire), oracle::embed(op_sqrt(oracle::identity(2) - m), dims, wire)};
                c = c.measure(wire, det, label);
            }
            std::optional<std::size_t> pick;
            if (rng() % 3 != 0) {
                pick = rng() % 2;
                q[label] = sg ? (*pick ? Outcome::Down : Outcome::Up) : (*pick ? Outcome::NoClick : Outcome::Click);
            }
            ref.kraus(kraus, pick);
        }
        auto r = evaluate(c, q);
        CHECK(std::abs(r.probability - ref.rho.trace().real()) < 1e-12);
    }
}

TEST_CASE("ancilla detectors inside circuits keep their statistics") {
    Rng rng(32);
    for (int t = 0; t < 100; t++) {
        auto det = std::make_shared<const Detector>(random_ancilla_detector(rng));
        auto psi = random_state(rng, {2, 2});
        Circuit c = Circuit(psi).measure(0, det, "d").measure(1, SternGerlach{}, "s");
        double direct = det->click_probability(psi, 0);
        CHECK(std::abs(evaluate(c, {{"d", Outcome::Click}}).probability - direct) < 1e-12);
        double split = evaluate(c, {{"d", Outcome::Click}, {"s", Outcome::Up}}).probability +
                       evaluate(c, {{"d", Outcome::Click}, {"s", Outcome::Down}}).probability;
        CHECK(std::abs(split - direct) < 1e-12);
    }
}

TEST_CASE("zero-probability selections are flagged") {
    Circuit c = Circuit(StateVector::up()).measure(0, SternGerlach{}, "a").measure(0, SternGerlach{}, "b");
    auto r = evaluate(c, {{"a", Outcome::Down}, {"b", Outcome::Up}});
    CHECK(r.probability == 0);
    CHECK(r.conditional_undefined);
}

TEST_CASE("circuit construction errors") {
    Circuit c(StateVector::s_lambda(0.3));
    CHECK_THROWS(c.gate({0}, ComplexMatrix{{1, 1}, {0, 1}}));
    CHECK_THROWS(c.gate({5}, pauli::X()));
    CHECK_THROWS(c.measure(0, SternGerlach{}, "a").measure(1, SternGerlach{}, "a"));
    CHECK_THROWS(evaluate(c.measure(0, SternGerlach{}, "a"), {{"a", Outcome::Click}}));
    CHECK_THROWS(evaluate(c, {{"missing", Outcome::Up}}));
}

TEST_CASE("sampling converges to the exact probabilities") {
    Rng rng(33);
    Circuit c = Circuit(StateVector::s_lambda(0.25)).measure(0, SternGerlach{}, "a");
    auto counts = sample_counts(c, rng, 20000);
    double up = static_cast<double>(counts["a=up"]) / 20000;
    CHECK(std::abs(up - 0.75) < 0.02);
    auto shot = sample_shot(c, rng);
    CHECK(shot.count("a") == 1);
}

TEST_CASE("identity checks pass under the Born bracket") {
    Rng rng(34);
    for (int t = 0; t < 50; t++) {
        auto det = std::make_shared<const Detector>(random_detector(rng));
        Probe probe{det, Outcome::Click};
        auto psi2 = random_state(rng, {2, 2});
        auto u = random_unitary(rng, 2);
        CHECK(check_identity_a1(random_state(rng, {2}), 0, random_state(rng, {3}), probe).passed);
        CHECK(check_identity_normalization(psi2, 1, det).passed);
        CHECK(check_identity_multiplication(psi2, Outcome::Down, probe).passed);
        CHECK(check_identity_causality(psi2, probe, u).passed);
        CHECK(check_identity_nosignal_unitary(psi2, probe, u).passed);
        auto ns = check_identity_nosignal_measure(psi2, probe);
        CHECK(ns.passed);
        CHECK(ns.get("unread_deviation") < 1e-12);
        SingleSpinExperiment e{{u}, det, Outcome::NoClick};
        CHECK(check_identity_a5_decomposition(uniform01(rng), e).passed);
    }
}

TEST_CASE("a5 decomposition against its closed form") {
    // Effect diag(0.9, 0.1): both sides equal 0.9(1 - lambda) + 0.1 lambda.
    auto det = std::make_shared<const Detector>(Detector::effect(ComplexMatrix{{0.9, 0}, {0, 0.1}}));
    SingleSpinExperiment e{{}, det, Outcome::Click};
    auto r = check_identity_a5_decomposition(0.3, e);
    CHECK(r.passed);
    CHECK(r.get("lhs") == doctest::Approx(0.9 * 0.7 + 0.1 * 0.3).epsilon(1e-12));
    CHECK(r.get("a_lambda") == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("outcome names round-trip") {
    for (auto o : {Outcome::Up, Outcome::Down, Outcome::Click, Outcome::NoClick}) {
        CHECK(parse_outcome(outcome_name(o)) == o);
    }
    CHECK(parse_outcome("no-click") == Outcome::NoClick);
    CHECK_FALSE(parse_outcome("sideways").has_value());
}
