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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bornverifier/identities.hpp"

namespace bornv {

/// 1 if p0 > x else 0. The down outcome is its complement.
double p1_rule(double p0, double x);

/// (3 - 2p) p^2
double p3_rule(double p0);

/// |<phi|A|psi>|^2 / <psi|A|psi> for positive-definite Hermitian A.
double p2_rule(const ComplexMatrix &a, std::span<const Complex> phi, std::span<const Complex> psi,
               double tol = kDefaultTolerance);

/// Pair with <phi_i|A|phi_j> = delta_ij built from the eigenvectors of A.
struct ModifiedBasis {
    std::vector<Complex> phi_up, phi_down;
};
ModifiedBasis modified_basis(const ComplexMatrix &a, double tol = kDefaultTolerance);
/// Throws unless (phi_up, phi_down) is A-orthonormal within `tol`.
void require_a_orthonormal(const ComplexMatrix &a, std::span<const Complex> phi_up,
                           std::span<const Complex> phi_down, double tol = kDefaultTolerance);

enum class RuleKind { Born, Random1, Modified2, Cubic3 };

struct ProbabilityRule {
    RuleKind kind = RuleKind::Born;
    /// Random1: seed of the x-stream, one x per priced bracket in call order.
    std::uint64_t x_seed = 0;
    /// Modified2: the metric operator.
    ComplexMatrix a = ComplexMatrix::identity(2);

    static ProbabilityRule born() { return {}; }
    static ProbabilityRule random1(std::uint64_t x_seed) { return {RuleKind::Random1, x_seed, ComplexMatrix::identity(2)}; }
    static ProbabilityRule modified2(ComplexMatrix a);
    static ProbabilityRule cubic3() { return {RuleKind::Cubic3, 0, ComplexMatrix::identity(2)}; }
};

const char *rule_name(RuleKind k);
std::optional<RuleKind> parse_rule(std::string_view name);

/// Bracket that transforms the exact probability by the rule. Random1 gives
/// the realization-level bracket whose x-stream advances on every call.
/// Modified2 has no circuit semantics and throws.
BracketFn rule_bracket(const ProbabilityRule &rule);

enum class IdentityStatus { Pass, Fail, NotEvaluated };
const char *status_name(IdentityStatus s);

struct BatteryResult {
    std::string rule;
    /// Keyed by the bare identity name; covers all seven.
    std::map<std::string, IdentityStatus> status;
    /// Largest difference from the Born value over the rule's probe states.
    double born_deviation = 0;
    std::vector<VerificationReport> reports;
    std::vector<std::string> notes;
};

/// The seven identities under `rule` on the same random instances used for
/// every other rule.
BatteryResult run_battery(const ProbabilityRule &rule, std::uint64_t seed, std::size_t instances = 200,
                          double tol = kDefaultTolerance);

}  // namespace bornv
