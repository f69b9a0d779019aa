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

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bornverifier/detectors.hpp"
#include "bornverifier/report.hpp"

namespace bornv {

enum class Outcome { Up, Down, Click, NoClick };

const char *outcome_name(Outcome o);
/// Accepts "up", "down", "click", "noclick" (also "no-click").
std::optional<Outcome> parse_outcome(std::string_view text);

struct SternGerlach {
    bool operator==(const SternGerlach &) const = default;
};

/// Stern-Gerlach along z, or a black-box detector.
using Device = std::variant<SternGerlach, std::shared_ptr<const Detector>>;

bool device_equal(const Device &a, const Device &b);
bool outcome_fits(const Device &d, Outcome o);

struct Gate {
    std::vector<std::size_t> wires;
    ComplexMatrix unitary;
    bool operator==(const Gate &) const = default;
};

struct Measure {
    std::size_t wire = 0;
    Device device;
    std::string label;
    bool operator==(const Measure &o) const {
        return wire == o.wire && label == o.label && device_equal(device, o.device);
    }
};

using Step = std::variant<Gate, Measure>;

/// Preparation followed by gates and labelled measurements.
class Circuit {
   public:
    explicit Circuit(StateVector initial, std::vector<Step> steps = {}, double tol = kDefaultTolerance);

    Circuit gate(std::vector<std::size_t> wires, ComplexMatrix u) const;
    Circuit measure(std::size_t wire, Device device, std::string label) const;

    const StateVector &initial() const { return initial_; }
    std::span<const std::size_t> factor_dims() const { return initial_.dims(); }
    const std::vector<Step> &steps() const { return steps_; }
    /// The Measure step carrying `label`, or nullptr.
    const Measure *find_measure(std::string_view label) const;

    bool operator==(const Circuit &o) const { return initial_ == o.initial_ && steps_ == o.steps_; }

   private:
    StateVector initial_;
    std::vector<Step> steps_;
    double tol_;
};

/// Required outcome per measurement label; absent labels are summed over.
using OutcomeQuery = std::map<std::string, Outcome>;

struct EvalResult {
    double probability = 0;
    /// A selected outcome had zero probability partway through; probability is 0.
    bool conditional_undefined = false;
};

/// Exact bracket value: gates applied in order, selected branches kept,
/// marginalized measurements split into separately tracked branches.
EvalResult evaluate(const Circuit &circuit, const OutcomeQuery &query);

struct MeasurementRecord {
    Outcome outcome;
    double probability = 0;
    /// Normalized branch with the measured spin kept as |up> or |down>; empty for a zero-probability branch.
    std::optional<StateVector> post_state;
};

/// Stern-Gerlach measurement of a spin factor.
std::array<MeasurementRecord, 2> sg_measure(const StateVector &psi, std::size_t wire);

/// Monte-Carlo outcome sampling, one shot. Demonstration only.
std::map<std::string, Outcome> sample_shot(const Circuit &circuit, Rng &rng);
/// Shots tallied by their joined "label=outcome" strings.
std::map<std::string, std::size_t> sample_counts(const Circuit &circuit, Rng &rng, std::size_t shots);

// ---------------------------------------------------------------------------
// Identity checks. Each bracket is priced by a BracketFn so alternative
// probability rules can be substituted for the exact evaluator.

using BracketFn = std::function<double(const Circuit &, const OutcomeQuery &)>;
BracketFn born_bracket();

/// Measurement device together with the outcome whose probability is asked for.
struct Probe {
    Device device;
    Outcome outcome;
};

/// [psi | measure wire] = [phi (x) psi | measure the same factor]
VerificationReport check_identity_a1(
    const StateVector &psi,
    std::size_t wire,
    const StateVector &phi,
    const Probe &probe,
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

/// Both outcomes of one device sum to 1.
VerificationReport check_identity_normalization(
    const StateVector &psi,
    std::size_t wire = 0,
    const Device &device = SternGerlach{},
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

/// Two spins: SG on wire 1 with result a, then `probe` on wire 0 factorizes into
/// [Psi | a] times the probability for the conditional state phi_a.
VerificationReport check_identity_multiplication(
    const StateVector &psi,
    Outcome a,
    const Probe &probe,
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

/// Probe on wire 0, unitary applied to wire 1 afterwards.
VerificationReport check_identity_causality(
    const StateVector &psi,
    const Probe &probe,
    const ComplexMatrix &post_unitary,
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

/// Probe on wire 0, unitary applied to wire 1 beforehand.
VerificationReport check_identity_nosignal_unitary(
    const StateVector &psi,
    const Probe &probe,
    const ComplexMatrix &pre_unitary,
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

/// Probe on wire 0 with an unread SG measurement of wire 1 first; checks both
/// equality with the unmeasured bracket and the split into the two SG outcomes.
/// Details: "unread_deviation", "additivity_deviation".
VerificationReport check_identity_nosignal_measure(
    const StateVector &psi,
    const Probe &probe,
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

/// Gates and a final measurement on one spin.
struct SingleSpinExperiment {
    std::vector<ComplexMatrix> gates;
    Device device;
    Outcome outcome;
};

/// [S_lambda | exp on wire 0] = a [up | exp] + (1 - a) [down | exp], a = [S_lambda | SG wire 1 up].
VerificationReport check_identity_a5_decomposition(
    double lambda,
    const SingleSpinExperiment &experiment,
    const BracketFn &bracket = born_bracket(),
    double tol = kDefaultTolerance);

}  // namespace bornv
