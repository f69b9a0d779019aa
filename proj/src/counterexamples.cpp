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

#include "bornverifier/counterexamples.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace bornv {

namespace {

void require_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1].");
    }
}

Complex sandwich(const ComplexMatrix &a, std::span<const Complex> l, std::span<const Complex> r) {
    return inner(l, a.apply(r));
}

void require_positive_metric(const ComplexMatrix &a, double tol) {
    if (a.rows() != 2 || a.cols() != 2 || !a.is_hermitian(tol)) {
        throw std::invalid_argument("The metric operator must be a 2x2 Hermitian matrix.");
    }
    if (eigen_hermitian2(a).values[1] <= tol) {
        throw std::invalid_argument("The metric operator must be positive definite.");
    }
}

}  // namespace

double p1_rule(double p0, double x) {
    require_probability(p0, "p0");
    require_probability(x, "x");
    return p0 > x ? 1.0 : 0.0;
}

double p3_rule(double p0) {
    require_probability(p0, "p0");
    return (3 - 2 * p0) * p0 * p0;
}

double p2_rule(const ComplexMatrix &a, std::span<const Complex> phi, std::span<const Complex> psi, double tol) {
    require_positive_metric(a, tol);
    double denom = sandwich(a, psi, psi).real();
    if (denom <= 0) {
        throw std::invalid_argument("State has zero modified norm.");
    }
    return std::norm(sandwich(a, phi, psi)) / denom;
}

ModifiedBasis modified_basis(const ComplexMatrix &a, double tol) {
    require_positive_metric(a, tol);
    auto eig = eigen_hermitian2(a);
    ModifiedBasis b;
    // Larger eigenvalue first, so A = diag(2, 2/3) gives phi_up along |up>.
    for (int k = 0; k < 2; k++) {
        auto v = eig.vectors[k];
        for (auto &z : v) {
            z /= std::sqrt(eig.values[k]);
        }
        (k == 0 ? b.phi_up : b.phi_down) = std::move(v);
    }
    return b;
}

void require_a_orthonormal(const ComplexMatrix &a, std::span<const Complex> phi_up,
                           std::span<const Complex> phi_down, double tol) {
    if (std::abs(sandwich(a, phi_up, phi_up) - Complex{1}) > tol ||
        std::abs(sandwich(a, phi_down, phi_down) - Complex{1}) > tol ||
        std::abs(sandwich(a, phi_up, phi_down)) > tol) {
        throw std::invalid_argument("Outcome vectors are not orthonormal in the modified scalar product.");
    }
}

ProbabilityRule ProbabilityRule::modified2(ComplexMatrix a) {
    require_positive_metric(a, kDefaultTolerance);
    return {RuleKind::Modified2, 0, std::move(a)};
}

const char *rule_name(RuleKind k) {
    switch (k) {
        case RuleKind::Born:
            return "born";
        case RuleKind::Random1:
            return "random1";
        case RuleKind::Modified2:
            return "modified2";
        case RuleKind::Cubic3:
            return "cubic3";
    }
    return "?";
}

std::optional<RuleKind> parse_rule(std::string_view name) {
    for (auto k : {RuleKind::Born, RuleKind::Random1, RuleKind::Modified2, RuleKind::Cubic3}) {
        if (name == rule_name(k)) {
            return k;
        }
    }
    return std::nullopt;
}

const char *status_name(IdentityStatus s) {
    switch (s) {
        case IdentityStatus::Pass:
            return "pass";
        case IdentityStatus::Fail:
            return "fail";
        case IdentityStatus::NotEvaluated:
            return "not-evaluated";
    }
    return "?";
}

BracketFn rule_bracket(const ProbabilityRule &rule) {
    switch (rule.kind) {
        case RuleKind::Born:
            return born_bracket();
        case RuleKind::Cubic3:
            return [](const Circuit &c, const OutcomeQuery &q) { return p3_rule(evaluate(c, q).probability); };
        case RuleKind::Random1: {
            auto stream = std::make_shared<Rng>(rule.x_seed);
            return [stream](const Circuit &c, const OutcomeQuery &q) {
                return p1_rule(evaluate(c, q).probability, uniform01(*stream));
            };
        }
        case RuleKind::Modified2:
            break;
    }
    throw std::invalid_argument("The modified2 rule has no circuit semantics.");
}

BatteryResult run_battery(const ProbabilityRule &rule, std::uint64_t seed, std::size_t instances, double tol) {
    BatteryResult out;
    out.rule = rule_name(rule.kind);
    for (auto n : kIdentityNames) {
        out.status[std::string(n)] = IdentityStatus::NotEvaluated;
    }
    auto record = [&](const VerificationReport &r) {
        out.status[r.name.substr(std::string("identity/").size())] =
            r.passed ? IdentityStatus::Pass : IdentityStatus::Fail;
        out.reports.push_back(r);
    };
    Rng probe_rng(seed ^ 0xB0B0B0B0ull);

    switch (rule.kind) {
        case RuleKind::Born:
        case RuleKind::Cubic3: {
            for (const auto &r : run_identity_battery(rule_bracket(rule), seed, instances, tol)) {
                record(r);
            }
            double worst = 0;
            if (rule.kind == RuleKind::Cubic3) {
                for (std::size_t i = 0; i < instances; i++) {
                    double p = sg_measure(random_state(probe_rng, {2}), 0)[0].probability;
                    worst = std::max(worst, std::abs(p3_rule(p) - p));
                }
                out.notes.push_back(
                    "the a5-decomposition failure admits three attributions: the multiplication and additivity "
                    "identities (Assumption 3), the unread-measurement identity (Assumption 4), or the "
                    "post-measurement state (Assumption 5); raw identity results are reported without choosing");
            }
            out.born_deviation = worst;
            break;
        }
        case RuleKind::Random1: {
            // Realization level: one x per priced bracket, so an added ancilla
            // draws a fresh x for the same physical question.
            auto realized = run_identity_battery(rule_bracket(rule), seed, instances, tol);
            VerificationReport a1 = realized.front();
            BracketFn same = rule_bracket(rule);
            Circuit c = Circuit(StateVector({2}, {M_SQRT1_2, M_SQRT1_2})).measure(0, SternGerlach{}, "m");
            double first = same(c, {{"m", Outcome::Up}});
            double differ = 0;
            for (int k = 0; k < 64 && differ == 0; k++) {
                differ = std::abs(same(c, {{"m", Outcome::Up}}) - first);
            }
            a1.detail("same_state_values_differ", differ);
            a1.note("values depend on the x attached to the event, not on the state alone");
            record(a1);
            // Expectation level: the mean of 1[p > x] over uniform x is p itself,
            // so the remaining identities are priced by the exact bracket.
            auto averaged = run_identity_battery(born_bracket(), seed, instances, tol);
            for (std::size_t k = 1; k < averaged.size(); k++) {
                averaged[k].note("expectation over the x-stream");
                record(averaged[k]);
            }
            out.born_deviation = 0;
            out.notes.push_back(
                "single realizations are 0/1 valued; identities other than a1-extension are checked for the "
                "expectation over x only");
            break;
        }
        case RuleKind::Modified2: {
            ModifiedBasis b = modified_basis(rule.a, tol);
            require_a_orthonormal(rule.a, b.phi_up, b.phi_down, tol);
            auto eig = eigen_hermitian2(rule.a);
            VerificationReport norm("identity/normalization", std::to_string(instances) + " random state(s)", tol);
            double worst_norm = 0;
            double worst_born = 0;
            std::vector<std::vector<Complex>> states{{M_SQRT1_2, M_SQRT1_2}};
            for (std::size_t i = 0; i < instances; i++) {
                states.push_back(random_unit_vector(probe_rng, 2));
            }
            for (const auto &psi : states) {
                double up = p2_rule(rule.a, b.phi_up, psi, tol);
                double down = p2_rule(rule.a, b.phi_down, psi, tol);
                worst_norm = std::max(worst_norm, std::abs(up + down - 1));
                worst_born = std::max(worst_born, std::abs(up - std::norm(inner(eig.vectors[0], psi))));
            }
            norm.deviation("max_instance_deviation", worst_norm);
            norm.detail("instances", static_cast<double>(states.size()));
            record(norm.finalize());
            out.born_deviation = worst_born;
            out.notes.push_back("dynamics conserving the modified scalar product are not simulated; only "
                                "state-level checks are evaluated");
            break;
        }
    }
    return out;
}

}  // namespace bornv
