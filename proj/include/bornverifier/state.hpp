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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bornverifier/linalg.hpp"

namespace bornv {

/// Amplitudes over an ordered tensor product of factors, not necessarily normalized.
/// Index ordering is big-endian: the first factor is the most significant digit, and
/// each spin factor enumerates (up, down) as (0, 1).
struct Ket {
    std::vector<std::size_t> dims;
    std::vector<Complex> amplitudes;

    Ket() = default;
    Ket(std::vector<std::size_t> factor_dims, std::vector<Complex> amps);

    std::size_t total_dim() const { return amplitudes.size(); }
    std::size_t factor_count() const { return dims.size(); }
    double norm_squared() const { return bornv::norm_squared(amplitudes); }
    bool operator==(const Ket &) const = default;
};

/// Product of factor dimensions, checked against `max_dim`.
std::size_t checked_total_dim(std::span<const std::size_t> dims, std::size_t max_dim = kMaxDimension);

/// A unit-norm Ket. Immutable once built.
class StateVector {
   public:
    /// Validates dims, length and unit norm (within `tol`).
    StateVector(std::vector<std::size_t> factor_dims, std::vector<Complex> amps, double tol = kDefaultTolerance);
    explicit StateVector(Ket ket, double tol = kDefaultTolerance);

    /// Rescales a non-zero ket to unit norm.
    static StateVector normalized(Ket ket);
    /// Computational basis state; `digits[k]` < dims[k].
    static StateVector basis(std::vector<std::size_t> dims, std::span<const std::size_t> digits);
    static StateVector up();
    static StateVector down();
    /// sqrt(1-lambda)|up,up> + sqrt(lambda)|down,down>
    static StateVector s_lambda(double lambda);

    const Ket &ket() const { return ket_; }
    std::span<const std::size_t> dims() const { return ket_.dims; }
    std::span<const Complex> amplitudes() const { return ket_.amplitudes; }
    std::size_t total_dim() const { return ket_.total_dim(); }
    std::size_t factor_count() const { return ket_.factor_count(); }
    Complex operator[](std::size_t k) const { return ket_.amplitudes[k]; }

    bool operator==(const StateVector &) const = default;

   private:
    Ket ket_;
};

/// Kronecker product with factor lists concatenated.
Ket tensor_product(const Ket &a, const Ket &b, std::size_t max_dim = kMaxDimension);
StateVector tensor_product(const StateVector &a, const StateVector &b, std::size_t max_dim = kMaxDimension);
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t max_dim = kMaxDimension);

/// Applies `op` to the listed factors (in the listed order, big-endian over them),
/// identity elsewhere. `op` may be non-square when it maps a factor set onto itself,
/// i.e. it must be (prod dims) x (prod dims).
Ket apply_on_factors(const Ket &ket, std::span<const std::size_t> factors, const ComplexMatrix &op);

/// Appends a factor in state `factor_state` (unit vector of length `dim`).
Ket append_factor(const Ket &ket, std::span<const Complex> factor_state, std::size_t max_dim = kMaxDimension);

/// Reorders factors: result factor k is source factor `order[k]`.
Ket permute_factors(const Ket &ket, std::span<const std::size_t> order);

/// Digit of `index` in factor `factor`.
std::size_t factor_digit(std::span<const std::size_t> dims, std::size_t index, std::size_t factor);

std::string describe_dims(std::span<const std::size_t> dims);

}  // namespace bornv
