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

#include "bornverifier/spin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bornv {

namespace {

void require_spin_factor(std::span<const std::size_t> dims, std::size_t spin_factor) {
    if (spin_factor >= dims.size()) {
        throw std::out_of_range("Spin factor index " + std::to_string(spin_factor) + " out of range.");
    }
    if (dims[spin_factor] != 2) {
        throw std::invalid_argument(
            "Factor " + std::to_string(spin_factor) + " has dimension " + std::to_string(dims[spin_factor]) +
            ", expected a spin (dimension 2).");
    }
}

std::size_t stride_of(std::span<const std::size_t> dims, std::size_t factor) {
    std::size_t s = 1;
    for (std::size_t k = factor + 1; k < dims.size(); k++) {
        s *= dims[k];
    }
    return s;
}

}  // namespace

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

double BlochVector::max_abs_diff(const BlochVector &o) const {
    return std::max({std::abs(x - o.x), std::abs(y - o.y), std::abs(z - o.z)});
}

void require_in_ball(const BlochVector &p, double tol) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw std::invalid_argument("Bloch vector components must be finite.");
    }
    if (p.norm() > 1 + tol) {
        throw std::invalid_argument("Bloch vector lies outside the unit ball (|p| = " + std::to_string(p.norm()) + ").");
    }
}

DensityMatrix2::DensityMatrix2(ComplexMatrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != 2 || m_.cols() != 2) {
        throw std::invalid_argument("DensityMatrix2 must be 2x2.");
    }
    if (!m_.is_hermitian(tol)) {
        throw std::invalid_argument("Density matrix is not Hermitian.");
    }
    if (std::abs(m_.trace() - Complex{1.0}) > tol) {
        throw std::invalid_argument("Density matrix trace is not 1.");
    }
    auto eig = eigen_hermitian2(m_);
    if (eig.values[1] < -tol) {
        throw std::invalid_argument("Density matrix has a negative eigenvalue.");
    }
}

DensityMatrix2 DensityMatrix2::from_bloch(const BlochVector &p) {
    require_in_ball(p);
    ComplexMatrix m{
        {0.5 * (1 + p.z), 0.5 * Complex{p.x, -p.y}},
        {0.5 * Complex{p.x, p.y}, 0.5 * (1 - p.z)},
    };
    return DensityMatrix2(std::move(m));
}

BlochVector DensityMatrix2::bloch() const {
    return {2 * m_(1, 0).real(), 2 * m_(1, 0).imag(), (m_(0, 0) - m_(1, 1)).real()};
}

double DensityMatrix2::expectation(std::span<const Complex> phi) const {
    if (phi.size() != 2) {
        throw std::invalid_argument("Expectation requires a 2-component spinor.");
    }
    return inner(phi, m_.apply(phi)).real();
}

Ket SchmidtForm::reconstruct() const {
    auto t1 = kron(a1, b1);
    auto t2 = kron(a2, b2);
    std::vector<Complex> amps(t1.size());
    for (std::size_t k = 0; k < amps.size(); k++) {
        amps[k] = c1 * t1[k] + c2 * t2[k];
    }
    return Ket({2, b1.size()}, std::move(amps));
}

DensityMatrix2 reduced_density(const StateVector &psi, std::size_t spin_factor) {
    require_spin_factor(psi.dims(), spin_factor);
    const std::size_t stride = stride_of(psi.dims(), spin_factor);
    ComplexMatrix rho(2, 2);
    for (std::size_t n = 0; n < psi.total_dim(); n++) {
        if (factor_digit(psi.dims(), n, spin_factor) != 0) {
            continue;
        }
        Complex up = psi[n];
        Complex down = psi[n + stride];
        rho(0, 0) += std::norm(up);
        rho(1, 1) += std::norm(down);
        rho(0, 1) += up * std::conj(down);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityMatrix2(std::move(rho));
}

BlochVector bloch_polarization(const Ket &psi, std::size_t spin_factor) {
    require_spin_factor(psi.dims, spin_factor);
    const std::size_t factors[] = {spin_factor};
    auto expect = [&](const ComplexMatrix &op) {
        Ket applied = apply_on_factors(psi, factors, op);
        return inner(psi.amplitudes, applied.amplitudes).real();
    };
    return {expect(pauli::X()), expect(pauli::Y()), expect(pauli::Z())};
}

BlochVector bloch_polarization(const StateVector &psi, std::size_t spin_factor) {
    return bloch_polarization(psi.ket(), spin_factor);
}

SchmidtForm schmidt_decompose(const StateVector &psi) {
    if (psi.factor_count() != 2 || psi.dims()[0] != 2) {
        throw std::invalid_argument(
            "Schmidt decomposition needs a bipartite 2 x d state, got dims " + describe_dims(psi.dims()) + ".");
    }
    const std::size_t d = psi.dims()[1];
    auto eig = eigen_hermitian2(reduced_density(psi, 0).matrix());

    auto project = [&](const std::vector<Complex> &a) {
        std::vector<Complex> b(d);
        for (std::size_t e = 0; e < d; e++) {
            b[e] = std::conj(a[0]) * psi[e] + std::conj(a[1]) * psi[d + e];
        }
        return b;
    };

    SchmidtForm out;
    out.a1 = eig.vectors[0];
    out.a2 = eig.vectors[1];
    out.b1 = project(out.a1);
    out.b2 = project(out.a2);
    out.c1 = norm(out.b1);
    out.c2 = norm(out.b2);
    if (out.c2 > out.c1) {
        std::swap(out.a1, out.a2);
        std::swap(out.b1, out.b2);
        std::swap(out.c1, out.c2);
    }
    for (auto &z : out.b1) {
        z /= out.c1;
    }

    constexpr double kVanishing = 1e-12;
    std::vector<Complex> seed;
    if (out.c2 > kVanishing) {
        seed = out.b2;
    } else {
        // First standard basis vector not parallel to b1.
        for (std::size_t k = 0; k < d; k++) {
            if (std::abs(out.b1[k]) < 1 - 1e-6) {
                seed = basis_vector(d, k);
                break;
            }
        }
    }
    for (int pass = 0; pass < 2; pass++) {
        Complex overlap = inner(out.b1, seed);
        for (std::size_t e = 0; e < d; e++) {
            seed[e] -= overlap * out.b1[e];
        }
    }
    double n = norm(seed);
    for (auto &z : seed) {
        z /= n;
    }
    out.b2 = std::move(seed);
    return out;
}

ComplexMatrix envariance_unitary(
    std::span<const Complex> b1p,
    std::span<const Complex> b2p,
    std::span<const Complex> b1pp,
    std::span<const Complex> b2pp,
    double tol) {
    auto vec = [](std::span<const Complex> s) { return std::vector<Complex>(s.begin(), s.end()); };
    if (std::abs(inner(b1p, b2p)) > tol || std::abs(inner(b1pp, b2pp)) > tol) {
        throw std::invalid_argument("Envariance unitary requires two orthogonal pairs.");
    }
    return map_orthonormal_sets({vec(b1p), vec(b2p)}, {vec(b1pp), vec(b2pp)}, tol);
}

StateVector purify(const BlochVector &p, double tol) {
    require_in_ball(p, tol);
    BlochVector q = p;
    if (q.norm() > 1) {
        q = q * (1 / q.norm());
    }
    auto eig = eigen_hermitian2(DensityMatrix2::from_bloch(q).matrix());
    double w1 = std::sqrt(std::clamp(eig.values[0], 0.0, 1.0));
    double w2 = std::sqrt(std::clamp(eig.values[1], 0.0, 1.0));
    const auto &a1 = eig.vectors[0];
    const auto &a2 = eig.vectors[1];
    std::vector<Complex> amps{w1 * a1[0], w2 * a2[0], w1 * a1[1], w2 * a2[1]};
    return StateVector::normalized(Ket({2, 2}, std::move(amps)));
}

std::vector<Complex> spinor_along(const BlochVector &n) {
    if (std::abs(n.norm() - 1) > 1e-9) {
        throw std::invalid_argument("spinor_along requires a unit direction.");
    }
    return eigen_hermitian2(DensityMatrix2::from_bloch(n).matrix()).vectors[0];
}

}  // namespace bornv
