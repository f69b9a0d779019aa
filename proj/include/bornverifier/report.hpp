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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bornverifier/linalg.hpp"

namespace bornv {

/// One sample of the dyadic sandwich argument: x, f(x) and the allowed 2^-k.
struct DyadicSample {
    double x = 0;
    double f = 0;
    double bound = 0;
};

struct DyadicProfile {
    int depth = 1;
    std::vector<DyadicSample> samples;
};

/// Outcome of one replayed identity, lemma or theorem.
struct VerificationReport {
    std::string name;
    std::string inputs;
    double max_deviation = 0;
    double tolerance = kDefaultTolerance;
    bool passed = true;
    std::vector<std::pair<std::string, double>> details;
    std::vector<std::string> notes;
    std::optional<DyadicProfile> dyadic;

    VerificationReport() = default;
    VerificationReport(std::string name, std::string inputs, double tolerance)
        : name(std::move(name)), inputs(std::move(inputs)), tolerance(tolerance) {}

    /// Records a named deviation (absolute value) and folds it into max_deviation.
    void deviation(const std::string &key, double value);
    void detail(const std::string &key, double value) { details.emplace_back(key, value); }
    void note(std::string text) { notes.push_back(std::move(text)); }
    /// passed = (max_deviation <= tolerance); a NaN deviation always fails.
    VerificationReport &finalize();
    /// Lookup of a recorded detail; throws std::out_of_range if absent.
    double get(const std::string &key) const;
};

/// Folds `part` into `into` under a key prefix, keeping the worst deviation.
void merge_report(VerificationReport &into, const VerificationReport &part, const std::string &prefix);

}  // namespace bornv
