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

#include "bornverifier/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bornv {

namespace {

const ComplexMatrix &up_projector() {
    static const ComplexMatrix p{{1, 0}, {0, 0}};
    return p;
}

const ComplexMatrix &down_projector() {
    static const ComplexMatrix p{{0, 0}, {0, 1}};
    return p;
}

Ket project(const Ket &ket, const Measure &m, Outcome o) {
    if (std::holds_alternative<SternGerlach>(m.device)) {
        const std::size_t f[] = {m.wire};
        return apply_on_factors(ket, f, o == Outcome::Up ? up_projector() : down_projector());
    }
    return std::get<std::shared_ptr<const Detector>>(m.device)->branch(ket, m.wire, o == Outcome::Click);
}

std::array<Outcome, 2> outcomes_of(const Device &d) {
    if (std::holds_alternative<SternGerlach>(d)) {
        return {Outcome::Up, Outcome::Down};
    }
    return {Outcome::Click, Outcome::NoClick};
}

double total_weight(const std::vector<Ket> &branches) {
    double t = 0;
    for (const auto &b : branches) {
        t += b.norm_squared();
    }
    return t;
}

std::string describe(const StateVector &psi) {
    return "dims " + describe_dims(psi.dims());
}

}  // namespace

const char *outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Up:
            return "up";
        case Outcome::Down:
            return "down";
        case Outcome::Click:
            return "click";
        case Outcome::NoClick:
            return "noclick";
    }
    return "?";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
    if (text == "up") {
        return Outcome::Up;
    }
    if (text == "down") {
        return Outcome::Down;
    }
    if (text == "click") {
        return Outcome::Click;
    }
    if (text == "noclick" || text == "no-click") {
        return Outcome::NoClick;
    }
    return std::nullopt;
}

bool device_equal(const Device &a, const Device &b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (std::holds_alternative<SternGerlach>(a)) {
        return true;
    }
    const auto &da = std::get<std::shared_ptr<const Detector>>(a);
    const auto &db = std::get<std::shared_ptr<const Detector>>(b);
    if (!da || !db) {
        return da == db;
    }
    return *da == *db;
}

bool outcome_fits(const Device &d, Outcome o) {
    auto pair = outcomes_of(d);
    return o == pair[0] || o == pair[1];
}

Circuit::Circuit(StateVector initial, std::vector<Step> steps, double tol)
    : initial_(std::move(initial)), steps_(std::move(steps)), tol_(tol) {
    const auto dims = initial_.dims();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < steps_.size(); i++) {
        const std::string where = "step " + std::to_string(i + 1) + ": ";
        if (auto *g = std::get_if<Gate>(&steps_[i])) {
            if (g->wires.empty()) {
                throw std::invalid_argument(where + "gate acts on no wires.");
            }
            std::size_t sub = 1;
            std::vector<bool> seen(dims.size(), false);
            for (auto w : g->wires) {
                if (w >= dims.size()) {
                    throw std::out_of_range(where + "gate wire " + std::to_string(w) + " out of range.");
                }
                if (seen[w]) {
                    throw std::invalid_argument(where + "gate lists wire " + std::to_string(w) + " twice.");
                }
                seen[w] = true;
                sub *= dims[w];
            }
            if (g->unitary.rows() != sub || !g->unitary.is_square()) {
                throw std::invalid_argument(where + "gate matrix does not match its wires.");
            }
            if (!g->unitary.is_unitary(tol_)) {
                throw std::invalid_argument(where + "gate matrix is not unitary.");
            }
        } else {
            const auto &m = std::get<Measure>(steps_[i]);
            if (m.wire >= dims.size()) {
                throw std::out_of_range(where + "measured wire " + std::to_string(m.wire) + " out of range.");
            }
            if (dims[m.wire] != 2) {
                throw std::invalid_argument(where + "only spin wires can be measured.");
            }
            if (auto *d = std::get_if<std::shared_ptr<const Detector>>(&m.device); d && !*d) {
                throw std::invalid_argument(where + "null detector.");
            }
            if (m.label.empty()) {
                throw std::invalid_argument(where + "measurement label is empty.");
            }
            if (std::find(labels.begin(), labels.end(), m.label) != labels.end()) {
                throw std::invalid_argument(where + "duplicate measurement label '" + m.label + "'.");
            }
            labels.push_back(m.label);
        }
    }
}

Circuit Circuit::gate(std::vector<std::size_t> wires, ComplexMatrix u) const {
    auto steps = steps_;
    steps.emplace_back(Gate{std::move(wires), std::move(u)});
    return Circuit(initial_, std::move(steps), tol_);
}

Circuit Circuit::measure(std::size_t wire, Device device, std::string label) const {
    auto steps = steps_;
    steps.emplace_back(Measure{wire, std::move(device), std::move(label)});
    return Circuit(initial_, std::move(steps), tol_);
}

const Measure *Circuit::find_measure(std::string_view label) const {
    for (const auto &s : steps_) {
        if (auto *m = std::get_if<Measure>(&s); m && m->label == label) {
            return m;
        }
    }
    return nullptr;
}

EvalResult evaluate(const Circuit &circuit, const OutcomeQuery &query) {
    for (const auto &[label, outcome] : query) {
        const Measure *m = circuit.find_measure(label);
        if (!m) {
            throw std::invalid_argument("Query names unknown measurement '" + label + "'.");
        }
        if (!outcome_fits(m->device, outcome)) {
            throw std::invalid_argument(
                "Outcome '" + std::string(outcome_name(outcome)) + "' does not fit measurement '" + label + "'.");
        }
    }
    // Branches below this squared norm count as impossible.
    constexpr double kImpossible = 1e-28;
    std::vector<Ket> branches{circuit.initial().ket()};
    for (const auto &step : circuit.steps()) {
        if (auto *g = std::get_if<Gate>(&step)) {
            for (auto &b : branches) {
                b = apply_on_factors(b, g->wires, g->unitary);
            }
            continue;
        }
        const auto &m = std::get<Measure>(step);
        auto it = query.find(m.label);
        std::vector<Ket> next;
        next.reserve(branches.size() * 2);
        for (const auto &b : branches) {
            if (it != query.end()) {
                next.push_back(project(b, m, it->second));
            } else {
                for (Outcome o : outcomes_of(m.device)) {
                    next.push_back(project(b, m, o));
                }
            }
        }
        branches = std::move(next);
        if (it != query.end() && total_weight(branches) <= kImpossible) {
            return {0.0, true};
        }
    }
    return {std::clamp(total_weight(branches), 0.0, 1.0), false};
}

std::array<MeasurementRecord, 2> sg_measure(const StateVector &psi, std::size_t wire) {
    if (wire >= psi.factor_count()) {
        throw std::out_of_range("Measured wire " + std::to_string(wire) + " out of range.");
    }
    if (psi.dims()[wire] != 2) {
        throw std::invalid_argument("Stern-Gerlach measurement needs a spin wire.");
    }
    std::array<MeasurementRecord, 2> out{
        MeasurementRecord{Outcome::Up, 0, std::nullopt}, MeasurementRecord{Outcome::Down, 0, std::nullopt}};
    const std::size_t f[] = {wire};
    for (int k = 0; k < 2; k++) {
        Ket branch = apply_on_factors(psi.ket(), f, k == 0 ? up_projector() : down_projector());
        out[k].probability = branch.norm_squared();
        if (out[k].probability > 0) {
            out[k].post_state = StateVector::normalized(std::move(branch));
        }
    }
    return out;
}

std::map<std::string, Outcome> sample_shot(const Circuit &circuit, Rng &rng) {
    std::map<std::string, Outcome> result;
    Ket ket = circuit.initial().ket();
    for (const auto &step : circuit.steps()) {
        if (auto *g = std::get_if<Gate>(&step)) {
            ket = apply_on_factors(ket, g->wires, g->unitary);
            continue;
        }
        const auto &m = std::get<Measure>(step);
        auto pair = outcomes_of(m.device);
        Ket first = project(ket, m, pair[0]);
        double p = first.norm_squared() / ket.norm_squared();
        bool take_first = uniform01(rng) < p;
        Ket chosen = take_first ? std::move(first) : project(ket, m, pair[1]);
        double n = std::sqrt(chosen.norm_squared());
        for (auto &z : chosen.amplitudes) {
            z /= n;
        }
        ket = std::move(chosen);
        result[m.label] = take_first ? pair[0] : pair[1];
    }
    return result;
}

std::map<std::string, std::size_t> sample_counts(const Circuit &circuit, Rng &rng, std::size_t shots) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t s = 0; s < shots; s++) {
        std::string key;
        for (const auto &[label, o] : sample_shot(circuit, rng)) {
            if (!key.empty()) {
                key += " ";
            }
            key += label + "=" + outcome_name(o);
        }
        counts[key]++;
    }
    return counts;
}

BracketFn born_bracket() {
    return [](const Circuit &c, const OutcomeQuery &q) { return evaluate(c, q).probability; };
}

VerificationReport check_identity_a1(
    const StateVector &psi,
    std::size_t wire,
    const StateVector &phi,
    const Probe &probe,
    const BracketFn &bracket,
    double tol) {
    VerificationReport r("identity/a1-extension", describe(psi) + ", ancilla " + describe(phi), tol);
    Circuit alone = Circuit(psi).measure(wire, probe.device, "m");
    Circuit extended = Circuit(tensor_product(phi, psi)).measure(phi.factor_count() + wire, probe.device, "m");
    double lhs = bracket(alone, {{"m", probe.outcome}});
    double rhs = bracket(extended, {{"m", probe.outcome}});
    r.detail("lhs", lhs);
    r.detail("rhs", rhs);
    r.deviation("deviation", lhs - rhs);
    return r.finalize();
}

VerificationReport check_identity_normalization(
    const StateVector &psi, std::size_t wire, const Device &device, const BracketFn &bracket, double tol) {
    VerificationReport r("identity/normalization", describe(psi), tol);
    Circuit c = Circuit(psi).measure(wire, device, "m");
    auto pair = outcomes_of(device);
    double p0 = bracket(c, {{"m", pair[0]}});
    double p1 = bracket(c, {{"m", pair[1]}});
    r.detail(std::string("p_") + outcome_name(pair[0]), p0);
    r.detail(std::string("p_") + outcome_name(pair[1]), p1);
    r.deviation("deviation", p0 + p1 - 1);
    return r.finalize();
}

VerificationReport check_identity_multiplication(
    const StateVector &psi, Outcome a, const Probe &probe, const BracketFn &bracket, double tol) {
    if (psi.factor_count() != 2 || psi.dims()[0] != 2 || psi.dims()[1] != 2) {
        throw std::invalid_argument("Multiplication identity needs a two-spin state.");
    }
    if (a != Outcome::Up && a != Outcome::Down) {
        throw std::invalid_argument("The second spin is measured by Stern-Gerlach (up/down).");
    }
    VerificationReport r("identity/multiplication", describe(psi), tol);
    Circuit joint = Circuit(psi).measure(1, SternGerlach{}, "a").measure(0, probe.device, "b");
    double lhs = bracket(joint, {{"a", a}, {"b", probe.outcome}});
    double first = bracket(Circuit(psi).measure(1, SternGerlach{}, "a"), {{"a", a}});
    auto records = sg_measure(psi, 1);
    const auto &rec = records[a == Outcome::Up ? 0 : 1];
    double conditional = 0;
    if (rec.post_state) {
        // post = phi_a (x) |a>
        const std::size_t digit = a == Outcome::Up ? 0 : 1;
        std::vector<Complex> phi{(*rec.post_state)[digit], (*rec.post_state)[2 + digit]};
        Circuit cond = Circuit(StateVector::normalized(Ket({2}, std::move(phi)))).measure(0, probe.device, "b");
        conditional = bracket(cond, {{"b", probe.outcome}});
    } else {
        r.note("conditional state undefined: zero-probability first outcome");
    }
    r.detail("lhs", lhs);
    r.detail("first_factor", first);
    r.detail("conditional_factor", conditional);
    r.deviation("deviation", lhs - first * conditional);
    return r.finalize();
}

namespace {

void require_wire1(const StateVector &psi, const ComplexMatrix &u) {
    if (psi.factor_count() != 2 || psi.dims()[0] != 2) {
        throw std::invalid_argument("Identity needs a 2 x d state.");
    }
    if (u.rows() != psi.dims()[1]) {
        throw std::invalid_argument("Unitary does not act on the second factor.");
    }
}

}  // namespace

VerificationReport check_identity_causality(
    const StateVector &psi,
    const Probe &probe,
    const ComplexMatrix &post_unitary,
    const BracketFn &bracket,
    double tol) {
    require_wire1(psi, post_unitary);
    VerificationReport r("identity/causality", describe(psi), tol);
    Circuit plain = Circuit(psi).measure(0, probe.device, "a");
    Circuit later = plain.gate({1}, post_unitary);
    double lhs = bracket(plain, {{"a", probe.outcome}});
    double rhs = bracket(later, {{"a", probe.outcome}});
    r.detail("lhs", lhs);
    r.detail("rhs", rhs);
    r.deviation("deviation", lhs - rhs);
    return r.finalize();
}

VerificationReport check_identity_nosignal_unitary(
    const StateVector &psi,
    const Probe &probe,
    const ComplexMatrix &pre_unitary,
    const BracketFn &bracket,
    double tol) {
    require_wire1(psi, pre_unitary);
    VerificationReport r("identity/nosignal-unitary", describe(psi), tol);
    Circuit plain = Circuit(psi).measure(0, probe.device, "a");
    Circuit earlier = Circuit(psi).gate({1}, pre_unitary).measure(0, probe.device, "a");
    double lhs = bracket(plain, {{"a", probe.outcome}});
    double rhs = bracket(earlier, {{"a", probe.outcome}});
    r.detail("lhs", lhs);
    r.detail("rhs", rhs);
    r.deviation("deviation", lhs - rhs);
    return r.finalize();
}

VerificationReport check_identity_nosignal_measure(
    const StateVector &psi, const Probe &probe, const BracketFn &bracket, double tol) {
    if (psi.factor_count() < 2 || psi.dims()[0] != 2 || psi.dims()[1] != 2) {
        throw std::invalid_argument("Identity needs two spin wires.");
    }
    VerificationReport r("identity/nosignal-measure", describe(psi), tol);
    Circuit plain = Circuit(psi).measure(0, probe.device, "a");
    Circuit unread = Circuit(psi).measure(1, SternGerlach{}, "s").measure(0, probe.device, "a");
    double p = bracket(plain, {{"a", probe.outcome}});
    double marginal = bracket(unread, {{"a", probe.outcome}});
    double up = bracket(unread, {{"a", probe.outcome}, {"s", Outcome::Up}});
    double down = bracket(unread, {{"a", probe.outcome}, {"s", Outcome::Down}});
    r.detail("unmeasured", p);
    r.detail("unread", marginal);
    r.detail("with_up", up);
    r.detail("with_down", down);
    r.deviation("unread_deviation", p - marginal);
    r.deviation("additivity_deviation", marginal - (up + down));
    return r.finalize();
}

VerificationReport check_identity_a5_decomposition(
    double lambda, const SingleSpinExperiment &experiment, const BracketFn &bracket, double tol) {
    if (!outcome_fits(experiment.device, experiment.outcome)) {
        throw std::invalid_argument("Experiment outcome does not fit its device.");
    }
    std::ostringstream in;
    in.precision(17);
    in << "lambda " << lambda << ", " << experiment.gates.size() << " gate(s)";
    VerificationReport r("identity/a5-decomposition", in.str(), tol);

    auto run_on_wire0 = [&](Circuit c) {
        for (const auto &g : experiment.gates) {
            c = c.gate({0}, g);
        }
        return c.measure(0, experiment.device, "a");
    };
    const StateVector s = StateVector::s_lambda(lambda);
    const OutcomeQuery want{{"a", experiment.outcome}};
    double lhs = bracket(run_on_wire0(Circuit(s)), want);
    Circuit sg = Circuit(s).measure(1, SternGerlach{}, "s");
    double a_up = bracket(sg, {{"s", Outcome::Up}});
    double a_down = bracket(sg, {{"s", Outcome::Down}});
    double cond_up = bracket(run_on_wire0(Circuit(StateVector::up())), want);
    double cond_down = bracket(run_on_wire0(Circuit(StateVector::down())), want);
    double rhs = a_up * cond_up + a_down * cond_down;

    r.detail("lhs", lhs);
    r.detail("rhs", rhs);
    r.detail("a_lambda", a_up);
    r.detail("a_lambda_oracle", sg_measure(s, 1)[0].probability);
    r.detail("conditional_up", cond_up);
    r.detail("conditional_down", cond_down);
    r.deviation("deviation", lhs - rhs);
    return r.finalize();
}

}  // namespace bornv
