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

#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "bornverifier/random.hpp"
#include "bornverifier/spin.hpp"

namespace bornv {

/// Anything that answers "what is the probability that this device clicks".
/// Tomography and the derivation only ever see this interface.
class ClickOracle {
   public:
    virtual ~ClickOracle() = default;
    virtual double click_probability(const StateVector &psi, std::size_t spin_factor) const = 0;
};

/// 0 <= M <= I acting on the spin.
struct EffectModel {
    ComplexMatrix m;
    bool operator==(const EffectModel &) const = default;
};

/// The spin interacts with an ancilla prepared in its first basis state; the
/// device clicks when the ancilla is then found in the range of `projector`.
struct AncillaModel {
    std::size_t ancilla_dim = 2;
    ComplexMatrix coupling;   // (2*ancilla_dim)^2, spin factor first
    ComplexMatrix projector;  // ancilla_dim^2
    bool operator==(const AncillaModel &) const = default;
};

using GroundTruth = std::variant<EffectModel, AncillaModel>;

/// A spin detector with a hidden quantum model.
class Detector : public ClickOracle {
   public:
    static Detector effect(ComplexMatrix m, double tol = kDefaultTolerance);
    static Detector ancilla(
        std::size_t ancilla_dim, ComplexMatrix coupling, ComplexMatrix projector, double tol = kDefaultTolerance);
    /// Projector onto the spinor polarized along unit `n`.
    static Detector projective(const BlochVector &n);
    /// CNOT from the spin onto a qubit ancilla (a down spin flips it), click on ancilla up.
    /// Same statistics as projective({0, 0, 1}).
    static Detector cnot_up();

    double click_probability(const StateVector &psi, std::size_t spin_factor) const override;
    double click_probability(const Ket &psi, std::size_t spin_factor) const;

    /// Unnormalized post-measurement ket of the click / no-click branch. The ancilla
    /// model leaves its ancilla appended as a new last factor.
    Ket branch(const Ket &psi, std::size_t spin_factor, bool click) const;
    /// Dimension of the factor `branch` appends (0 for an effect model).
    std::size_t appended_dim() const;

    /// For serialization only; verification code must not read it.
    const GroundTruth &ground_truth() const { return truth_; }
    bool operator==(const Detector &other) const { return truth_ == other.truth_; }

   private:
    explicit Detector(GroundTruth truth, std::vector<ComplexMatrix> kraus);
    GroundTruth truth_;
    std::vector<ComplexMatrix> kraus_;  // effect model: sqrt(M), sqrt(I - M)
};

/// Wraps another oracle and post-processes its answer, e.g. to inject a
/// non-quantum probability rule into the derivation.
class DistortedOracle : public ClickOracle {
   public:
    DistortedOracle(std::shared_ptr<const ClickOracle> base, std::function<double(double)> fn)
        : base_(std::move(base)), fn_(std::move(fn)) {}
    double click_probability(const StateVector &psi, std::size_t spin_factor) const override {
        return fn_(base_->click_probability(psi, spin_factor));
    }

   private:
    std::shared_ptr<const ClickOracle> base_;
    std::function<double(double)> fn_;
};

/// F(p) = alpha . p + beta
struct AffineResponse {
    BlochVector alpha;
    double beta = 0;

    double evaluate(const BlochVector &p) const { return alpha.dot(p) + beta; }
};

struct PovmEffect {
    ComplexMatrix m;
};

class NonPhysicalResponse : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Click probability for the canonical purification of `p`.
double probe_fclick(const ClickOracle &det, const BlochVector &p);

/// Tomography from the four reference points O = 0, A = x, B = y, C = z.
AffineResponse extract_affine(const ClickOracle &det);

/// Values of F at O, A, B, C.
struct ReferenceValues {
    double o, a, b, c;
};
ReferenceValues reference_values(const AffineResponse &resp);

/// F(p) rebuilt from the reference values by the convex-combination chain:
/// segment OA, triangle OAB, tetrahedron OABC, then (for exterior points) the
/// line through p and the tetrahedron centroid.
double linear_extension(const AffineResponse &resp, const BlochVector &p);

/// Details of the exterior-point step, exposed for inspection and tests.
struct ExteriorStep {
    bool inside = true;
    BlochVector q1, q2;  // entry and exit points of the clipped line, q1 nearer to p
    double lambda = 0;   // p = (q1 - lambda q2) / (1 - lambda)
};
ExteriorStep exterior_step(const BlochVector &p);
bool in_reference_tetrahedron(const BlochVector &p, double tol = 0);

/// M = alpha . sigma + beta I, after checking the response stays in [0, 1] on the ball.
PovmEffect to_povm(const AffineResponse &resp, double tol = kDefaultTolerance);

/// sum_k w_k P_click(psi_k)
double mixed_click_probability(
    const std::vector<std::pair<double, StateVector>> &ensemble,
    const ClickOracle &det,
    std::size_t spin_factor = 0,
    double tol = kDefaultTolerance);

/// Random valid detector: effect U diag(l1, l2) U^dag, or a Haar-coupled ancilla
/// model with ancilla_dim in {2, 4} and a random projector of intermediate rank.
Detector random_detector(Rng &rng);
Detector random_effect_detector(Rng &rng);
Detector random_ancilla_detector(Rng &rng);

}  // namespace bornv
