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

#include "bornverifier/report.hpp"

#include <cmath>
#include <stdexcept>

namespace bornv {

void VerificationReport::deviation(const std::string &key, double value) {
    double v = std::abs(value);
    details.emplace_back(key, v);
    // Once NaN, max_deviation stays NaN: v > NaN is false.
    if (std::isnan(v) || v > max_deviation) {
        max_deviation = v;
    }
}

VerificationReport &VerificationReport::finalize() {
    passed = !std::isnan(max_deviation) && max_deviation <= tolerance;
    return *this;
}

double VerificationReport::get(const std::string &key) const {
    for (const auto &[k, v] : details) {
        if (k == key) {
            return v;
        }
    }
    throw std::out_of_range("Report '" + name + "' has no detail '" + key + "'.");
}

void merge_report(VerificationReport &into, const VerificationReport &part, const std::string &prefix) {
    for (const auto &[k, v] : part.details) {
        into.details.emplace_back(prefix + k, v);
    }
    for (const auto &n : part.notes) {
        into.notes.push_back(prefix + n);
    }
    if (std::isnan(part.max_deviation) || part.max_deviation > into.max_deviation) {
        into.max_deviation = part.max_deviation;
    }
}

}  // namespace bornv
