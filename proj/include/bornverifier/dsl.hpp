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

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bornverifier/circuits.hpp"

namespace bornv::dsl {

// Line-oriented experiment text (.qexp). '#' starts a comment; a bracketed
// literal may span lines.
//
//   wire w0                         spin (dimension 2)
//   wire env dim 3
//   state S = sqrt(0.75)*|uu> + sqrt(0.25)*|dd>
//   state P on w0 = |u>             over the listed wires only
//   state V = [0.5, 0.5i, ...]      amplitude list, big-endian
//   unitary U = [[0, 1], [1, 0]]
//   detector D = effect [[1, 0], [0, 0]]
//   detector N = projective (0, 0, 1)
//   detector A = ancilla 2 coupling [[...]] projector [[...]]
//   prepare S                       or several partial states, or a ket expression
//   gate H on w0                    builtins I X Y Z H S T CNOT CZ SWAP RX(t) RY(t) RZ(t)
//   measure w0 SG as a -> up        label and outcome optional
//   query both: a=up, b=click
//
// Ket characters are u/d for a spin factor and 0-9 for larger factors.
// Scalars are complex literals (2, -0.5, 1e-3, 0.5i, i, (0.1-0.2i)), sqrt(r)
// and products of those. Inline "-> outcome" entries form the query "default".

class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::string token);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string &message() const { return message_; }
    const std::string &token() const { return token_; }

   private:
    std::size_t line_, column_;
    std::string message_, token_;
};

struct WireDecl {
    std::string name;
    std::size_t dim = 2;
    bool operator==(const WireDecl &) const = default;
};

struct StateDecl {
    std::string name;
    /// Wires covered, in factor order; empty means every wire.
    std::vector<std::string> wires;
    std::vector<Complex> amplitudes;
    bool operator==(const StateDecl &) const = default;
};

struct UnitaryDecl {
    std::string name;
    ComplexMatrix matrix;
    bool operator==(const UnitaryDecl &) const = default;
};

struct EffectSpec {
    ComplexMatrix m;
    bool operator==(const EffectSpec &) const = default;
};
struct ProjectiveSpec {
    BlochVector n;
    bool operator==(const ProjectiveSpec &) const = default;
};
struct AncillaSpec {
    std::size_t dim = 2;
    ComplexMatrix coupling;
    ComplexMatrix projector;
    bool operator==(const AncillaSpec &) const = default;
};
using DetectorSpec = std::variant<EffectSpec, ProjectiveSpec, AncillaSpec>;

struct DetectorDecl {
    std::string name;
    DetectorSpec spec;
    bool operator==(const DetectorDecl &) const = default;
};

struct GateStep {
    /// Builtin or declared unitary name.
    std::string gate;
    std::vector<double> params;
    std::vector<std::string> wires;
    bool operator==(const GateStep &) const = default;
};

struct MeasureStep {
    std::string wire;
    /// "SG" or a detector name.
    std::string device;
    std::string label;
    bool operator==(const MeasureStep &) const = default;
};

using StepDecl = std::variant<GateStep, MeasureStep>;

struct QueryDecl {
    std::string name;
    std::vector<std::pair<std::string, Outcome>> outcomes;
    bool operator==(const QueryDecl &) const = default;
};

struct ExperimentSpec {
    std::vector<WireDecl> wires;
    std::vector<StateDecl> states;
    std::vector<UnitaryDecl> unitaries;
    std::vector<DetectorDecl> detectors;
    /// Names of partial states, multiplied in the listed order.
    std::vector<std::string> prepare;
    /// A prepare line holding a ket expression over every wire.
    std::optional<std::vector<Complex>> prepare_inline;
    std::vector<StepDecl> steps;
    std::vector<QueryDecl> queries;

    bool operator==(const ExperimentSpec &) const = default;

    std::vector<std::size_t> dims() const;
    std::size_t wire_index(std::string_view name) const;
    const QueryDecl *find_query(std::string_view name) const;
    const DetectorDecl *find_detector(std::string_view name) const;

    /// Initial state in wire order.
    StateVector initial_state() const;
    Circuit circuit() const;
    OutcomeQuery outcome_query(std::string_view query_name) const;
    /// evaluate(circuit(), outcome_query(name))
    EvalResult evaluate(std::string_view query_name) const;
};

/// Throws ParseError; every reference and every numeric constraint
/// (normalization, unitarity, detector validity) is checked at its token.
ExperimentSpec parse(std::string_view source);

/// Canonical text: declarations grouped by kind, numbers at 17 significant digits.
std::string print(const ExperimentSpec &spec);

/// Builds the black-box detector described by a spec.
Detector build_detector(const DetectorSpec &spec);

/// Builtin gate matrix, or nullopt if `name` is not a builtin. Throws on a wrong parameter count.
std::optional<ComplexMatrix> builtin_gate(std::string_view name, const std::vector<double> &params);

}  // namespace bornv::dsl
