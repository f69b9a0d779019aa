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

#include "bornverifier/dsl.hpp"

using namespace bornv;
using bornv::dsl::ParseError;

namespace {

ParseError parse_error(std::string_view src) {
    try {
        dsl::parse(src);
    } catch (const ParseError &e) {
        return e;
    }
    FAIL("expected a parse error for: " << src);
    throw std::logic_error("unreachable");
}

// Positions are 1-based and inside the text, allowing the end-of-line slot.
bool position_in_bounds(std::string_view src, const ParseError &e) {
    std::size_t line = 1, start = 0;
    for (std::size_t i = 0; i < src.size() && line < e.line(); i++) {
        if (src[i] == '\n') {
            line++;
            start = i + 1;
        }
    }
    if (line != e.line() || e.column() == 0) {
        return false;
    }
    std::size_t end = src.find('\n', start);
    std::size_t len = (end == std::string_view::npos ? src.size() : end) - start;
    return e.column() <= len + 1;
}

}  // namespace

TEST_CASE("S_lambda state literal") {
    auto spec = dsl::parse("wire a\nwire b\nstate S = sqrt(0.75)*|uu> + sqrt(0.25)*|dd>\nprepare S\n");
    auto s = spec.initial_state();
    auto ref = StateVector::s_lambda(0.25);
    CHECK(max_abs_diff(s.amplitudes(), ref.amplitudes()) < 1e-15);
}

TEST_CASE("inline outcomes form the default query") {
    auto spec = dsl::parse("wire w0\nprepare |u>\nmeasure w0 SG -> up\n");
    REQUIRE(spec.queries.size() == 1);
    CHECK(spec.queries[0].name == "default");
    CHECK(spec.evaluate("default").probability == 1);
    auto s = dsl::parse("wire a\nwire b\nstate S = sqrt(0.75)*|uu> + sqrt(0.25)*|dd>\nprepare S\nmeasure a SG -> up\n");
    CHECK(s.evaluate("default").probability == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("undeclared wire is reported at its token") {
    std::string src = "wire w0\nprepare |u>\ngate X on w9\n";
    auto e = parse_error(src);
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);
    CHECK(e.token() == "w9");
    CHECK(std::string(e.what()).find("undeclared wire") != std::string::npos);
}

TEST_CASE("empty document") {
    auto spec = dsl::parse("");
    CHECK(spec.wires.empty());
    CHECK(dsl::print(spec).empty());
    CHECK(dsl::parse(dsl::print(spec)) == spec);
    CHECK(dsl::parse("# only a comment\n\n") == spec);
}

TEST_CASE("effect entries print with 17 significant digits") {
    auto spec = dsl::parse("wire s\ndetector D = effect [[0.1, 0], [0, 0.30000000000000004]]\n");
    auto text = dsl::print(spec);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("0.30000000000000004") != std::string::npos);
    CHECK(dsl::parse(text) == spec);
}

TEST_CASE("numbers survive the round trip bit-exactly") {
    Rng rng(3);
    for (int t = 0; t < 200; t++) {
        auto psi = random_state(rng, {2, 3});
        std::string src = "wire a\nwire b dim 3\nstate P = [";
        char buf[64];
        for (std::size_t k = 0; k < psi.total_dim(); k++) {
            std::snprintf(buf, sizeof buf, "%s(%.17g%+.17gi)", k ? ", " : "", psi[k].real(), psi[k].imag());
            src += buf;
        }
        src += "]\nprepare P\n";
        auto spec = dsl::parse(src);
        auto again = dsl::parse(dsl::print(spec));
        CHECK(again == spec);
        CHECK(spec.initial_state().amplitudes()[0] == psi[0]);
    }
}

TEST_CASE("every construct round-trips") {
    const char *src = R"(# all statement kinds
wire s
wire t
wire e dim 3
state A on s = (0.6+0.8i)*|u>
state B on t e = sqrt(0.5)*|u0> - i*sqrt(0.5)*|d2>
unitary U = [[0, 1], [1, 0]]
detector D = effect [[0.9, 0], [0, 0.1]]
detector N = projective(0, 0, 1)
detector C = ancilla 2 coupling [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]] projector [[0, 0], [0, 1]]
prepare A B
gate H on s
gate RY(0.25) on t
gate CNOT on s t
gate U on s
measure s SG as a -> up
measure t D -> click
measure s N as n
measure t C as c
query joint: a = down, n = click, c = noclick
)";
    auto spec = dsl::parse(src);
    CHECK(spec.wires.size() == 3);
    CHECK(spec.detectors.size() == 3);
    CHECK(spec.steps.size() == 8);
    CHECK(spec.queries.size() == 2);
    CHECK(spec.queries[0].name == "default");
    auto printed = dsl::print(spec);
    auto again = dsl::parse(printed);
    CHECK(again == spec);
    CHECK(dsl::print(again) == printed);
    CHECK(spec.evaluate("joint").probability == doctest::Approx(again.evaluate("joint").probability));
}

TEST_CASE("validation errors carry positions") {
    const char *bad[] = {
        "wire a\nstate S = |u> + |d>\n",
        "wire a\nunitary U = [[1, 1], [0, 1]]\n",
        "wire a\ndetector D = effect [[2, 0], [0, 0]]\n",
        "wire a\nwire a\n",
        "wire a\nprepare |u>\nmeasure a D\n",
        "wire a\nprepare |u>\nmeasure a SG -> click\n",
        "wire a\nprepare |uu>\n",
        "wire a dim 3\nprepare |u>\n",
        "wire a\nstate S = [1, 0\n",
        "wire a\nprepare |u>\nmeasure a SG as x\nmeasure a SG as x\n",
        "wire a\nprepare |u>\nquery q: zz = up\n",
        "prepare |u>\n",
        "wire a\nprepare |u>\ngate RX on a\n",
        "wire a\nprepare |u>\ngate CNOT on a\n",
        "wire a\nstate S = 1.5*|u>\n",
        "wire a\nprepare |u>\nmeasure a SG -> up\nquery default: m0 = up\n",
        "wire 7a\n",
        "wire a\n@\n",
        "wire a\nwire b\nstate S on a = |u>\nprepare S\n",
        "wire a\ngate H on a\n",
        "wire gate\n",
        "wire a\nprepare sqrt(-1)*|u>\n",
        "wire a\nstate S = |u>\nstate S = |d>\n",
        "wire a\nprepare |u>\nmeasure a SG -> up extra\n",
    };
    for (const char *src : bad) {
        auto e = parse_error(src);
        CHECK_MESSAGE(position_in_bounds(src, e), src << " -> " << e.what());
        CHECK_FALSE(e.message().empty());
    }
}

TEST_CASE("truncated inputs never escape as other exceptions") {
    std::string src = R"(wire s
wire e dim 3
state B = sqrt(0.5)*|u0> + sqrt(0.5)*|d2>
detector D = effect [[0.9, 0], [0, 0.1]]
prepare B
gate RY(0.25) on s
measure s D as d -> click
query q: d = noclick
)";
    for (std::size_t n = 0; n <= src.size(); n++) {
        std::string part = src.substr(0, n);
        try {
            dsl::parse(part);
        } catch (const ParseError &e) {
            CHECK(position_in_bounds(part, e));
        }
    }
}

TEST_CASE("builtin gates") {
    auto h = dsl::builtin_gate("H", {});
    REQUIRE(h);
    CHECK(h->is_unitary());
    auto rx = dsl::builtin_gate("RX", {3.141592653589793});
    REQUIRE(rx);
    CHECK(std::abs((*rx)(0, 1) - Complex(0, -1)) < 1e-15);
    CHECK_FALSE(dsl::builtin_gate("FOO", {}).has_value());
    CHECK_THROWS(dsl::builtin_gate("RZ", {}));
    CHECK(dsl::builtin_gate("CNOT", {})->rows() == 4);
}

TEST_CASE("spec lookups") {
    auto spec = dsl::parse("wire a\nwire b dim 4\ndetector D = projective(1, 0, 0)\nprepare |u3>\nmeasure a D as x\nquery q: x = click\n");
    CHECK(spec.dims() == std::vector<std::size_t>{2, 4});
    CHECK(spec.wire_index("b") == 1);
    CHECK(spec.find_detector("D") != nullptr);
    CHECK(spec.find_query("nope") == nullptr);
    CHECK_THROWS_AS(spec.evaluate("nope"), std::out_of_range);
    CHECK(spec.evaluate("q").probability == doctest::Approx(0.5));
}
