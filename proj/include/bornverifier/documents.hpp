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
#include <string>
#include <vector>

#include "bornverifier/coordinate.hpp"
#include "bornverifier/counterexamples.hpp"
#include "bornverifier/derivation.hpp"

namespace bornv {

inline constexpr const char *kToolVersion = "1.0.0";

/// A finished report: canonical JSON (sorted keys, 17 significant digits),
/// an optional CSV summary and the overall pass flag.
struct Document {
    std::string json;
    std::string csv;
    bool passed = true;
};

Document verify_document(std::uint64_t seed, double tol, const SuiteOptions &options);
Document counterexample_document(const ProbabilityRule &rule, std::uint64_t seed, std::size_t instances, double tol);
/// Tomography of a black-box detector with the linearity check folded in.
Document tomography_document(const Detector &det, const std::string &name, std::uint64_t seed, double tol);
Document born_integral_document(const Wavefunction1D &psi, const IntervalDetector &det, double tol);

/// One row per report: name,passed,max_deviation,tolerance.
std::string csv_summary(const std::vector<VerificationReport> &reports);

}  // namespace bornv
