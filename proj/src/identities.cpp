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

#include "bornverifier/identities.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <string>

namespace bornv {

namespace {

std::uint64_t family_seed(std::uint64_t seed, std::size_t family) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (family + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct Aggregate {
    VerificationReport report;
    double worst = 0;
    std::size_t worst_index = 0;
    std::size_t count = 0;

    Aggregate(std::string_view name, std::size_t instances, double tol)
        : report("identity/" + std::string(name), std::to_string(instances) + " random instance(s)", tol) {}

    void add(double deviation) {
        double d = std::abs(deviation);
        // A NaN instance sticks: NaN > x is always false afterwards.
        if (!std::isnan(worst) && (std::isnan(d) || d > worst)) {
            worst = d;
            worst_index = count;
        }
        count++;
    }

    VerificationReport finish() {
        report.deviation("max_instance_deviation", worst);
        report.detail("worst_instance", static_cast<double>(worst_index));
        report.detail("instances", static_cast<double>(count));
        return report.finalize();
    }
};

ComplexMatrix random_spin_gate(Rng &rng) {
    return random_unitary(rng, 2);
}

}  // namespace

Probe random_probe(Rng &rng) {
    if (uniform01(rng) < 0.5) {
        return {SternGerlach{}, uniform01(rng) < 0.5 ? Outcome::Up : Outcome::Down};
    }
    auto det = std::make_shared<const Detector>(random_detector(rng));
    return {det, uniform01(rng) < 0.5 ? Outcome::Click : Outcome::NoClick};
}

std::vector<VerificationReport> run_identity_battery(
    const BracketFn &bracket, std::uint64_t seed, std::size_t instances, double tol) {
    std::vector<Aggregate> agg;
    for (auto name : kIdentityNames) {
        agg.emplace_back(name, instances, tol);
    }
    auto &a1 = agg[0];
    auto &norm = agg[1];
    auto &mult = agg[2];
    auto &caus = agg[3];
    auto &nsu = agg[4];
    auto &nsm = agg[5];
    auto &a5 = agg[6];

    {
        Rng rng(family_seed(seed, 0));
        for (std::size_t i = 0; i < instances; i++) {
            std::size_t spins = uniform01(rng) < 0.5 ? 1 : 2;
            StateVector psi = random_state(rng, std::vector<std::size_t>(spins, 2));
            std::size_t wire = spins == 1 ? 0 : static_cast<std::size_t>(uniform01(rng) * 2);
            StateVector phi = random_state(rng, {uniform01(rng) < 0.5 ? std::size_t{2} : std::size_t{3}});
            Probe probe = random_probe(rng);
            a1.add(check_identity_a1(psi, wire, phi, probe, bracket, tol).max_deviation);
        }
    }
    {
        Rng rng(family_seed(seed, 1));
        for (std::size_t i = 0; i < instances; i++) {
            StateVector psi = random_state(rng, {2, 3});
            Probe probe = random_probe(rng);
            norm.add(check_identity_normalization(psi, 0, probe.device, bracket, tol).max_deviation);
        }
    }
    {
        Rng rng(family_seed(seed, 2));
        for (std::size_t i = 0; i < instances; i++) {
            StateVector psi = random_state(rng, {2, 2});
            Outcome a = uniform01(rng) < 0.5 ? Outcome::Up : Outcome::Down;
            Probe probe = random_probe(rng);
            double product = check_identity_multiplication(psi, a, probe, bracket, tol).max_deviation;
            double additivity = check_identity_nosignal_measure(psi, probe, bracket, tol).get("additivity_deviation");
            mult.add(std::max(product, additivity));
        }
    }
    {
        Rng rng(family_seed(seed, 3));
        for (std::size_t i = 0; i < instances; i++) {
            std::size_t d = uniform01(rng) < 0.5 ? 2 : 4;
            StateVector psi = random_state(rng, {2, d});
            Probe probe = random_probe(rng);
            ComplexMatrix u = random_unitary(rng, d);
            caus.add(check_identity_causality(psi, probe, u, bracket, tol).max_deviation);
        }
    }
    {
        Rng rng(family_seed(seed, 4));
        for (std::size_t i = 0; i < instances; i++) {
            std::size_t d = uniform01(rng) < 0.5 ? 2 : 4;
            StateVector psi = random_state(rng, {2, d});
            Probe probe = random_probe(rng);
            ComplexMatrix u = random_unitary(rng, d);
            nsu.add(check_identity_nosignal_unitary(psi, probe, u, bracket, tol).max_deviation);
        }
    }
    {
        Rng rng(family_seed(seed, 5));
        for (std::size_t i = 0; i < instances; i++) {
            StateVector psi = random_state(rng, {2, 2});
            Probe probe = random_probe(rng);
            nsm.add(check_identity_nosignal_measure(psi, probe, bracket, tol).get("unread_deviation"));
        }
    }
    {
        Rng rng(family_seed(seed, 6));
        const double t = M_PI / 3;
        SingleSpinExperiment fixed{
            {},
            std::make_shared<const Detector>(Detector::projective({std::sin(t), 0, std::cos(t)})),
            Outcome::Click,
        };
        auto first = check_identity_a5_decomposition(0.3, fixed, bracket, tol);
        a5.report.detail("fixed_lambda", 0.3);
        a5.report.detail("fixed_lhs", first.get("lhs"));
        a5.report.detail("fixed_rhs", first.get("rhs"));
        a5.report.deviation("fixed_deviation", first.max_deviation);
        a5.add(first.max_deviation);
        for (std::size_t i = 1; i < instances; i++) {
            double lambda = uniform01(rng);
            SingleSpinExperiment exp;
            std::size_t gates = static_cast<std::size_t>(uniform01(rng) * 3);
            for (std::size_t g = 0; g < gates; g++) {
                exp.gates.push_back(random_spin_gate(rng));
            }
            Probe probe = random_probe(rng);
            exp.device = probe.device;
            exp.outcome = probe.outcome;
            a5.add(check_identity_a5_decomposition(lambda, exp, bracket, tol).max_deviation);
        }
    }

    std::vector<VerificationReport> out;
    for (auto &a : agg) {
        out.push_back(a.finish());
    }
    return out;
}

}  // namespace bornv
