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
#include <cstdint>
#include <string_view>
#include <vector>

#include "bornverifier/circuits.hpp"

namespace bornv {

/// The seven identity families, in report order.
inline constexpr std::array<std::string_view, 7> kIdentityNames{
    "a1-extension", "normalization",     "multiplication", "causality",
    "nosignal-unitary", "nosignal-measure", "a5-decomposition",
};

/// Random probe: Stern-Gerlach or a random detector, with a random outcome.
Probe random_probe(Rng &rng);

/// Runs every identity family over `instances` random instances priced by
/// `bracket`, one aggregated report per family ("identity/<name>").
///
/// Instances depend only on `seed`, never on the bracket, so two probability
/// rules are always compared on the same circuits. The additivity half of the
/// unread-measurement check is reported under "multiplication" (it is the
/// classical sum rule); "nosignal-measure" keeps only the comparison with the
/// unmeasured bracket. The a5 family always starts with lambda = 0.3 and a
/// projective detector tilted 60 degrees from z.
std::vector<VerificationReport> run_identity_battery(
    const BracketFn &bracket, std::uint64_t seed, std::size_t instances, double tol = kDefaultTolerance);

}  // namespace bornv
