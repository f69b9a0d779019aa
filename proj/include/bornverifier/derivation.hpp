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
#include <memory>
#include <string>
#include <vector>

#include "bornverifier/circuits.hpp"
#include "bornverifier/detectors.hpp"
#include "bornverifier/report.hpp"

namespace bornv {

/// Random Schmidt data shared by two states that differ only in their
/// environment bases; checks equal click probabilities and that the
/// environment unitary carries one state into the other.
VerificationReport verify_envariance(
    const ClickOracle &det, std::size_t trials, std::uint64_t seed, std::size_t env_dim = 4,
    double tol = kDefaultTolerance);

/// The four-spin construction: polarization of Psi_lambda, the map V onto
/// |up up> (x) S_lambda, the convex identity for F and its betweenness.
VerificationReport verify_lemma1(
    const ClickOracle &det, const BlochVector &p0, const BlochVector &p1, double lambda,
    double tol = kDefaultTolerance);

/// Midpoint identity, plus a_{1/2} = 1/2 from the Bell state.
VerificationReport verify_lemma2(
    const ClickOracle &det, const BlochVector &p0, const BlochVector &p1, double tol = kDefaultTolerance);

struct DyadicOptions {
    int depth = 20;
    /// Every dyadic p/2^L with L up to this level is checked exhaustively.
    int exhaustive_level = 10;
    std::size_t random_points = 100;
};

/// f(x) = (F(p_x) - F(p0)) / (F(p1) - F(p0)) probed along the segment; checks
/// dyadic values, monotonicity and the 2^-k sandwich bound. A flat segment
/// (|F(p1) - F(p0)| < 1e-6) is checked for constancy instead.
VerificationReport verify_lemma3_dyadic(
    const ClickOracle &det, const BlochVector &p0, const BlochVector &p1, std::uint64_t seed,
    const DyadicOptions &options = {}, double tol = kDefaultTolerance);

/// Affine tomography against direct probes at random points, the six poles,
/// entangled states with a larger environment and random mixtures.
VerificationReport verify_theorem1(
    const ClickOracle &det, std::size_t n_points, std::uint64_t seed, double tol = kDefaultTolerance);

/// Eigen-directions, extreme probabilities and the Born rule (or its
/// generalized form for a non-ideal device) on pure and mixed states.
VerificationReport verify_theorem2(
    const ClickOracle &det, std::size_t n_states, std::uint64_t seed, double tol = kDefaultTolerance);

enum class Injection { None, Cubic3 };

struct SuiteOptions {
    /// Comma-separated report-name prefixes; empty runs everything.
    std::string subset;
    int depth = 20;
    Injection inject = Injection::None;
};

struct NamedDetector {
    std::string name;
    std::shared_ptr<const Detector> detector;
};

/// Fixed devices followed by `random_count` random ones.
std::vector<NamedDetector> standard_detector_battery(std::uint64_t seed, std::size_t random_count = 8);

/// Stable per-report seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

/// Every verifier over the standard battery, sorted by report name.
std::vector<VerificationReport> run_full_suite(
    std::uint64_t seed, double tol = kDefaultTolerance, const SuiteOptions &options = {});

}  // namespace bornv
