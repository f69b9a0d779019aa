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

#include "bornverifier/coordinate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bornverifier/derivation.hpp"

namespace bornv {

namespace {

double discrete_norm_squared(const std::vector<Complex> &v, double dx) {
    return norm_squared(v) * dx;
}

void require_grid(double x_min, double x_max, std::size_t n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw std::invalid_argument("Grid needs finite bounds with x_max > x_min.");
    }
    if (n < 2) {
        throw std::invalid_argument("Grid needs at least 2 points.");
    }
}

}  // namespace

Wavefunction1D::Wavefunction1D(double x_min, double x_max, std::vector<Complex> values, double tol)
    : x_min_(x_min), x_max_(x_max), values_(std::move(values)) {
    require_grid(x_min_, x_max_, values_.size());
    for (const auto &z : values_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("Wavefunction samples must be finite.");
        }
    }
    double n = discrete_norm_squared(values_, dx());
    if (std::abs(n - 1) > tol) {
        throw std::invalid_argument("Wavefunction is not normalized (sum |psi|^2 dx = " + std::to_string(n) + ").");
    }
}

Wavefunction1D Wavefunction1D::normalized(double x_min, double x_max, std::vector<Complex> values) {
    require_grid(x_min, x_max, values.size());
    double dx = (x_max - x_min) / static_cast<double>(values.size());
    double n = std::sqrt(discrete_norm_squared(values, dx));
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("Cannot normalize a vanishing wavefunction.");
    }
    for (auto &z : values) {
        z /= n;
    }
    return Wavefunction1D(x_min, x_max, std::move(values));
}

Wavefunction1D Wavefunction1D::uniform(double x_min, double x_max, std::size_t n) {
    return normalized(x_min, x_max, std::vector<Complex>(n, 1.0));
}

Wavefunction1D Wavefunction1D::gaussian(double mu, double sigma, double x_min, double x_max, std::size_t n) {
    if (!(sigma > 0)) {
        throw std::invalid_argument("Gaussian width must be positive.");
    }
    require_grid(x_min, x_max, n);
    const double dx = (x_max - x_min) / static_cast<double>(n);
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; i++) {
        double u = (x_min + static_cast<double>(i) * dx - mu) / sigma;
        v[i] = std::exp(-0.25 * u * u);
    }
    return normalized(x_min, x_max, std::move(v));
}

Wavefunction1D Wavefunction1D::read(std::istream &in) {
    std::vector<double> xs;
    std::vector<Complex> vals;
    std::string line;
    std::size_t lineno = 0;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (auto h = line.find('#'); h != std::string::npos) {
            line.erase(h);
        }
        std::istringstream row(line);
        std::vector<double> cols;
        double v;
        while (row >> v) {
            cols.push_back(v);
        }
        if (!row.eof()) {
            throw std::invalid_argument("Line " + std::to_string(lineno) + ": not a number.");
        }
        if (cols.empty()) {
            continue;
        }
        if (cols.size() != 2 && cols.size() != 3) {
            throw std::invalid_argument("Line " + std::to_string(lineno) + ": expected 2 or 3 columns.");
        }
        if (columns != 0 && cols.size() != columns) {
            throw std::invalid_argument("Line " + std::to_string(lineno) + ": column count changed.");
        }
        columns = cols.size();
        xs.push_back(cols[0]);
        vals.emplace_back(cols[1], columns == 3 ? cols[2] : 0.0);
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("Wavefunction file needs at least 2 samples.");
    }
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(dx > 0)) {
        throw std::invalid_argument("Sample coordinates must increase.");
    }
    for (std::size_t i = 1; i < xs.size(); i++) {
        if (std::abs(xs[i] - xs[i - 1] - dx) > 1e-6 * dx) {
            throw std::invalid_argument("Samples are not on a uniform grid (row " + std::to_string(i + 1) + ").");
        }
    }
    return normalized(xs.front(), xs.back() + dx, std::move(vals));
}

IntervalDetector::IntervalDetector(double a, double b) : x1(a), x2(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw std::invalid_argument("Interval detector needs finite x1 < x2.");
    }
}

namespace {

void require_overlap(const Wavefunction1D &psi, const IntervalDetector &det) {
    if (det.x2 < psi.x_min() || det.x1 >= psi.x_max()) {
        throw std::invalid_argument("Interval does not overlap the grid.");
    }
}

}  // namespace

IntervalDecomposition decompose_interval(const Wavefunction1D &psi, const IntervalDetector &det) {
    require_overlap(psi, det);
    const std::size_t n = psi.size();
    std::vector<Complex> inside(n), outside(n);
    for (std::size_t i = 0; i < n; i++) {
        (det.contains(psi.x(i)) ? inside : outside)[i] = psi.values()[i];
    }
    IntervalDecomposition d;
    d.c1 = std::sqrt(discrete_norm_squared(inside, psi.dx()));
    d.c0 = std::sqrt(discrete_norm_squared(outside, psi.dx()));
    if (d.c1 > 0) {
        d.phi1 = Wavefunction1D::normalized(psi.x_min(), psi.x_max(), std::move(inside));
    }
    if (d.c0 > 0) {
        d.phi0 = Wavefunction1D::normalized(psi.x_min(), psi.x_max(), std::move(outside));
    }
    return d;
}

double born_integral(const Wavefunction1D &psi, const IntervalDetector &det) {
    require_overlap(psi, det);
    double acc = 0;
    for (std::size_t i = 0; i < psi.size(); i++) {
        if (det.contains(psi.x(i))) {
            acc += std::norm(psi.values()[i]);
        }
    }
    return acc * psi.dx();
}

BlochVector isospin_polarization(std::span<const Complex> chi0, std::span<const Complex> chi1, double tol) {
    if (chi0.size() != chi1.size() || chi0.empty()) {
        throw std::invalid_argument("Isospin components must be non-empty and of equal dimension.");
    }
    double n0 = norm_squared(chi0);
    double n1 = norm_squared(chi1);
    if (std::abs(n0 + n1 - 1) > tol) {
        throw std::invalid_argument("Isospin components must satisfy <chi0|chi0> + <chi1|chi1> = 1.");
    }
    Complex overlap = inner(chi1, chi0);
    return {2 * overlap.real(), 2 * overlap.imag(), n1 - n0};
}

VerificationReport verify_isospin_born(const ClickOracle &click_model, const Wavefunction1D &psi,
                                       const IntervalDetector &det, double tol) {
    std::ostringstream in;
    in.precision(17);
    in << psi.size() << " grid point(s), interval [" << det.x1 << ", " << det.x2 << "]";
    VerificationReport r("isospin-born", in.str(), tol);

    const IntervalDecomposition dec = decompose_interval(psi, det);
    const double integral = born_integral(psi, det);
    r.detail("c0", dec.c0);
    r.detail("c1", dec.c1);
    r.detail("born_integral", integral);
    r.note(dec.phi0 ? "phi0 defined" : "phi0 undefined: no weight outside the interval");
    r.note(dec.phi1 ? "phi1 defined" : "phi1 undefined: no weight inside the interval");
    r.deviation("c1_squared_vs_integral", dec.c1 * dec.c1 - integral);
    r.deviation("branch_weights", dec.c0 * dec.c0 + dec.c1 * dec.c1 - 1);

    // The particle's environment is untouched by the split, so both branches
    // carry the same environment vector e0.
    const std::vector<Complex> chi0{dec.c0, 0.0};
    const std::vector<Complex> chi1{dec.c1, 0.0};
    const StateVector iso({2, 2}, {chi1[0], chi1[1], chi0[0], chi0[1]});
    const BlochVector p = isospin_polarization(chi0, chi1, tol);
    r.detail("p_x", p.x);
    r.detail("p_y", p.y);
    r.detail("p_z", p.z);
    r.deviation("isospin_polarization", bloch_polarization(iso, 0).max_abs_diff(p));

    const double click = click_model.click_probability(iso, 0);
    const AffineResponse resp = extract_affine(click_model);
    r.detail("p_click", click);
    r.deviation("affine_response", click - resp.evaluate(p));

    const double a = resp.alpha.norm();
    if (a > 1e-12) {
        const auto phi_up = spinor_along(resp.alpha * (1 / a));
        const double pmax = click_model.click_probability(StateVector(Ket({2}, phi_up)), 0);
        const double pmin = resp.beta - a;
        const double rule = (pmax - pmin) * reduced_density(iso, 0).expectation(phi_up) + pmin;
        r.deviation("pure_state_rule", click - rule);
    } else {
        r.note("constant click model: no isospin direction");
    }
    r.deviation("click_vs_c1_squared", click - dec.c1 * dec.c1);
    r.deviation("click_vs_integral", click - integral);

    // The mixing construction for the isospin uses three further spins.
    BlochVector q = p.norm() > 1 ? p * (1 / p.norm()) : p;
    merge_report(r, verify_lemma1(click_model, q, {0, 0, 1}, 0.5, tol), "lemma1/");
    return r.finalize();
}

VerificationReport verify_isospin_born(const Wavefunction1D &psi, const IntervalDetector &det, double tol) {
    return verify_isospin_born(Detector::projective({0, 0, 1}), psi, det, tol);
}

}  // namespace bornv
