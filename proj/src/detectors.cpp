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

#include "bornverifier/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bornv {

namespace {

// f(M) for Hermitian 2x2 M through its eigendecomposition.
ComplexMatrix hermitian_function(const ComplexMatrix &m, double (*f)(double)) {
    auto eig = eigen_hermitian2(m);
    ComplexMatrix out(2, 2);
    for (int k = 0; k < 2; k++) {
        out = out + ComplexMatrix::outer(eig.vectors[k], eig.vectors[k]) * Complex{f(eig.values[k])};
    }
    return out;
}

double clamped_sqrt(double x) {
    return std::sqrt(std::clamp(x, 0.0, 1.0));
}

double clamped_sqrt_complement(double x) {
    return std::sqrt(std::clamp(1.0 - x, 0.0, 1.0));
}

void require_spin(const Ket &psi, std::size_t spin_factor) {
    if (spin_factor >= psi.factor_count()) {
        throw std::out_of_range("Detector spin factor " + std::to_string(spin_factor) + " out of range.");
    }
    if (psi.dims[spin_factor] != 2) {
        throw std::invalid_argument("Detectors act on a dimension-2 factor.");
    }
}

}  // namespace

Detector::Detector(GroundTruth truth, std::vector<ComplexMatrix> kraus)
    : truth_(std::move(truth)), kraus_(std::move(kraus)) {
}

Detector Detector::effect(ComplexMatrix m, double tol) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("Effect operator must be 2x2.");
    }
    if (!m.is_hermitian(tol)) {
        throw std::invalid_argument("Effect operator is not Hermitian.");
    }
    auto eig = eigen_hermitian2(m);
    if (eig.values[1] < -tol || eig.values[0] > 1 + tol) {
        throw std::invalid_argument(
            "Effect operator eigenvalues must lie in [0, 1], got " + std::to_string(eig.values[1]) + " and " +
            std::to_string(eig.values[0]) + ".");
    }
    std::vector<ComplexMatrix> kraus{
        hermitian_function(m, clamped_sqrt), hermitian_function(m, clamped_sqrt_complement)};
    return Detector(EffectModel{std::move(m)}, std::move(kraus));
}

Detector Detector::ancilla(std::size_t ancilla_dim, ComplexMatrix coupling, ComplexMatrix projector, double tol) {
    if (ancilla_dim < 2) {
        throw std::invalid_argument("Ancilla dimension must be at least 2.");
    }
    if (coupling.rows() != 2 * ancilla_dim || !coupling.is_square()) {
        throw std::invalid_argument("Coupling must act on spin (x) ancilla.");
    }
    if (!coupling.is_unitary(tol)) {
        throw std::invalid_argument("Coupling is not unitary.");
    }
    if (projector.rows() != ancilla_dim || !projector.is_square()) {
        throw std::invalid_argument("Projector must act on the ancilla.");
    }
    if (!projector.is_hermitian(tol) || (projector * projector).max_abs_diff(projector) > tol) {
        throw std::invalid_argument("Ancilla projector must be Hermitian and idempotent.");
    }
    return Detector(AncillaModel{ancilla_dim, std::move(coupling), std::move(projector)}, {});
}

Detector Detector::projective(const BlochVector &n) {
    auto v = spinor_along(n);
    return effect(ComplexMatrix::outer(v, v));
}

Detector Detector::cnot_up() {
    ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    return ancilla(2, std::move(cnot), ComplexMatrix{{1, 0}, {0, 0}});
}

std::size_t Detector::appended_dim() const {
    if (auto *a = std::get_if<AncillaModel>(&truth_)) {
        return a->ancilla_dim;
    }
    return 0;
}

Ket Detector::branch(const Ket &psi, std::size_t spin_factor, bool click) const {
    require_spin(psi, spin_factor);
    if (std::holds_alternative<EffectModel>(truth_)) {
        const std::size_t factors[] = {spin_factor};
        return apply_on_factors(psi, factors, kraus_[click ? 0 : 1]);
    }
    const auto &model = std::get<AncillaModel>(truth_);
    Ket ext = append_factor(psi, basis_vector(model.ancilla_dim, 0));
    const std::size_t anc = ext.factor_count() - 1;
    const std::size_t pair[] = {spin_factor, anc};
    ext = apply_on_factors(ext, pair, model.coupling);
    const std::size_t only[] = {anc};
    ComplexMatrix proj = click ? model.projector : ComplexMatrix::identity(model.ancilla_dim) - model.projector;
    return apply_on_factors(ext, only, proj);
}

double Detector::click_probability(const Ket &psi, std::size_t spin_factor) const {
    require_spin(psi, spin_factor);
    if (auto *e = std::get_if<EffectModel>(&truth_)) {
        const std::size_t factors[] = {spin_factor};
        Ket applied = apply_on_factors(psi, factors, e->m);
        return std::clamp(inner(psi.amplitudes, applied.amplitudes).real(), 0.0, 1.0);
    }
    return std::clamp(branch(psi, spin_factor, true).norm_squared(), 0.0, 1.0);
}

double Detector::click_probability(const StateVector &psi, std::size_t spin_factor) const {
    return click_probability(psi.ket(), spin_factor);
}

double probe_fclick(const ClickOracle &det, const BlochVector &p) {
    return det.click_probability(purify(p), 0);
}

AffineResponse extract_affine(const ClickOracle &det) {
    double f_o = probe_fclick(det, {0, 0, 0});
    double f_a = probe_fclick(det, {1, 0, 0});
    double f_b = probe_fclick(det, {0, 1, 0});
    double f_c = probe_fclick(det, {0, 0, 1});
    return {{f_a - f_o, f_b - f_o, f_c - f_o}, f_o};
}

ReferenceValues reference_values(const AffineResponse &resp) {
    return {resp.beta, resp.beta + resp.alpha.x, resp.beta + resp.alpha.y, resp.beta + resp.alpha.z};
}

bool in_reference_tetrahedron(const BlochVector &p, double tol) {
    return p.x >= -tol && p.y >= -tol && p.z >= -tol && p.x + p.y + p.z <= 1 + tol;
}

ExteriorStep exterior_step(const BlochVector &p) {
    ExteriorStep out;
    if (in_reference_tetrahedron(p)) {
        return out;
    }
    out.inside = false;
    const BlochVector g{0.25, 0.25, 0.25};
    const BlochVector d = g - p;
    // Each face constraint reads c0 + t c1 >= 0 along L(t) = p + t d.
    const double c0[4] = {p.x, p.y, p.z, 1 - p.x - p.y - p.z};
    const double c1[4] = {d.x, d.y, d.z, -(d.x + d.y + d.z)};
    double t_in = 0;
    double t_out = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; k++) {
        if (c1[k] > 0) {
            t_in = std::max(t_in, -c0[k] / c1[k]);
        } else if (c1[k] < 0) {
            t_out = std::min(t_out, -c0[k] / c1[k]);
        }
    }
    if (!(t_in > 0 && t_in <= 1 && t_out >= 1 && std::isfinite(t_out))) {
        throw std::logic_error("Exterior line does not cross the reference tetrahedron as expected.");
    }
    out.q1 = p + d * t_in;
    out.q2 = p + d * t_out;
    out.lambda = t_in / t_out;
    return out;
}

namespace {

// Steps (i)-(iii): p inside OABC.
double tetrahedron_value(const ReferenceValues &f, const BlochVector &p) {
    auto segment = [&](double x) { return (1 - x) * f.o + x * f.a; };
    auto triangle = [&](double x, double y) {
        double rest = 1 - y;
        double f0 = rest > 0 ? segment(x / rest) : f.o;
        return rest * f0 + y * f.b;
    };
    double rest = 1 - p.z;
    double f0 = rest > 0 ? triangle(p.x / rest, p.y / rest) : f.o;
    return rest * f0 + p.z * f.c;
}

}  // namespace

double linear_extension(const AffineResponse &resp, const BlochVector &p) {
    require_in_ball(p);
    const auto f = reference_values(resp);
    auto step = exterior_step(p);
    if (step.inside) {
        return tetrahedron_value(f, p);
    }
    double f1 = tetrahedron_value(f, step.q1);
    double f2 = tetrahedron_value(f, step.q2);
    return (f1 - step.lambda * f2) / (1 - step.lambda);
}

PovmEffect to_povm(const AffineResponse &resp, double tol) {
    const double a = resp.alpha.norm();
    if (resp.beta + a > 1 + tol || resp.beta - a < -tol) {
        throw NonPhysicalResponse(
            "Affine response leaves [0, 1] on the Bloch ball (beta = " + std::to_string(resp.beta) +
            ", |alpha| = " + std::to_string(a) + ").");
    }
    const auto &al = resp.alpha;
    ComplexMatrix m{
        {resp.beta + al.z, Complex{al.x, -al.y}},
        {Complex{al.x, al.y}, resp.beta - al.z},
    };
    return {std::move(m)};
}

double mixed_click_probability(
    const std::vector<std::pair<double, StateVector>> &ensemble,
    const ClickOracle &det,
    std::size_t spin_factor,
    double tol) {
    if (ensemble.empty()) {
        throw std::invalid_argument("Ensemble is empty.");
    }
    double total = 0;
    for (const auto &[w, psi] : ensemble) {
        if (!(w >= 0)) {
            throw std::invalid_argument("Ensemble weights must be non-negative.");
        }
        total += w;
    }
    if (std::abs(total - 1) > tol) {
        throw std::invalid_argument("Ensemble weights must sum to 1.");
    }
    double p = 0;
    for (const auto &[w, psi] : ensemble) {
        p += w * det.click_probability(psi, spin_factor);
    }
    return p;
}

Detector random_effect_detector(Rng &rng) {
    ComplexMatrix u = random_unitary(rng, 2);
    double l1 = uniform01(rng);
    double l2 = uniform01(rng);
    ComplexMatrix diag{{l1, 0}, {0, l2}};
    ComplexMatrix m = u * diag * u.adjoint();
    // Enforce exact Hermiticity after the product.
    m = (m + m.adjoint()) * Complex{0.5};
    return Detector::effect(std::move(m));
}

Detector random_ancilla_detector(Rng &rng) {
    const std::size_t ad = uniform01(rng) < 0.5 ? 2 : 4;
    ComplexMatrix coupling = random_unitary(rng, 2 * ad);
    std::size_t rank = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(ad - 1));
    rank = std::min(rank, ad - 1);
    ComplexMatrix frame = random_unitary(rng, ad);
    ComplexMatrix proj(ad, ad);
    for (std::size_t k = 0; k < rank; k++) {
        std::vector<Complex> col(ad);
        for (std::size_t r = 0; r < ad; r++) {
            col[r] = frame(r, k);
        }
        proj = proj + ComplexMatrix::outer(col, col);
    }
    return Detector::ancilla(ad, std::move(coupling), std::move(proj));
}

Detector random_detector(Rng &rng) {
    return uniform01(rng) < 0.5 ? random_effect_detector(rng) : random_ancilla_detector(rng);
}

}  // namespace bornv
