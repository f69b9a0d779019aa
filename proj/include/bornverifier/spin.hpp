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
#include <cstddef>
#include <vector>

#include "bornverifier/state.hpp"

namespace bornv {

/// Spin polarization: expectation values of the three Pauli matrices.
struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
    double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    BlochVector operator+(const BlochVector &o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector &o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }
    BlochVector operator-() const { return {-x, -y, -z}; }
    double max_abs_diff(const BlochVector &o) const;
    bool operator==(const BlochVector &) const = default;
};

/// Throws if |p| > 1 + tol.
void require_in_ball(const BlochVector &p, double tol = kDefaultTolerance);

/// Reduced 2x2 density matrix of a single spin.
class DensityMatrix2 {
   public:
    /// Validates Hermiticity, unit trace and positivity within `tol`.
    explicit DensityMatrix2(ComplexMatrix m, double tol = kDefaultTolerance);
    /// (I + sigma.p)/2
    static DensityMatrix2 from_bloch(const BlochVector &p);

    const ComplexMatrix &matrix() const { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    /// Polarization read back from the matrix entries.
    BlochVector bloch() const;
    /// <phi|rho|phi>
    double expectation(std::span<const Complex> phi) const;

   private:
    ComplexMatrix m_;
};

/// psi = c1 |a1>|b1> + c2 |a2>|b2>, with c1 >= c2 >= 0.
struct SchmidtForm {
    double c1 = 0;
    double c2 = 0;
    std::vector<Complex> a1, a2;
    std::vector<Complex> b1, b2;

    /// The state c1 a1 (x) b1 + c2 a2 (x) b2 as a 2 x d ket.
    Ket reconstruct() const;
};

/// Partial trace of `psi` down to the dimension-2 factor `spin_factor`.
DensityMatrix2 reduced_density(const StateVector &psi, std::size_t spin_factor);

/// <psi| sigma (x) I |psi> evaluated by applying each Pauli operator to the factor.
BlochVector bloch_polarization(const StateVector &psi, std::size_t spin_factor);
BlochVector bloch_polarization(const Ket &psi, std::size_t spin_factor);

/// Closed-form Schmidt decomposition of a normalized 2 x d state.
/// Degenerate coefficients use {|up>, |down>}; a vanishing c2 completes b2 by
/// Gram-Schmidt; each spin Schmidt vector has its first non-zero entry real positive.
SchmidtForm schmidt_decompose(const StateVector &psi);

/// d x d unitary taking b1p -> b1pp and b2p -> b2pp; each pair must be orthonormal.
ComplexMatrix envariance_unitary(
    std::span<const Complex> b1p,
    std::span<const Complex> b2p,
    std::span<const Complex> b1pp,
    std::span<const Complex> b2pp,
    double tol = kDefaultTolerance);

/// Two-spin pure state whose first spin has polarization `p`:
/// sqrt(w1)|a1>|up> + sqrt(w2)|a2>|down> for the eigenpairs of (I + sigma.p)/2.
StateVector purify(const BlochVector &p, double tol = kDefaultTolerance);

/// Unit spinor with polarization `n` (|n| = 1).
std::vector<Complex> spinor_along(const BlochVector &n);

}  // namespace bornv
