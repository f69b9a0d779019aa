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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bornv {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kMaxDimension = 1024;

/// Dense complex matrix stored row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Row-by-row literal, e.g. `{{0, 1}, {1, 0}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    /// |ket><bra|
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix &rhs) const;
    ComplexMatrix operator+(const ComplexMatrix &rhs) const;
    ComplexMatrix operator-(const ComplexMatrix &rhs) const;
    ComplexMatrix operator*(Complex scale) const;
    std::vector<Complex> apply(std::span<const Complex> v) const;
    Complex trace() const;

    /// Largest absolute entry difference.
    double max_abs_diff(const ComplexMatrix &other) const;
    bool is_hermitian(double tol = kDefaultTolerance) const;
    bool is_unitary(double tol = kDefaultTolerance) const;

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

// Vector helpers over raw amplitude spans.
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm_squared(std::span<const Complex> v);
double norm(std::span<const Complex> v);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);
std::vector<Complex> basis_vector(std::size_t dim, std::size_t index);

/// Extends an orthonormal set to a full orthonormal basis of C^dim by
/// Gram-Schmidt over the standard basis vectors in index order.
std::vector<std::vector<Complex>> complete_orthonormal_basis(
    const std::vector<std::vector<Complex>> &orthonormal, std::size_t dim, double tol = kDefaultTolerance);

/// Unitary U with U*source[k] = target[k], completed on the orthogonal complements
/// as U = sum_k |target_k><source_k| over the two completed bases.
ComplexMatrix map_orthonormal_sets(
    const std::vector<std::vector<Complex>> &sources,
    const std::vector<std::vector<Complex>> &targets,
    double tol = kDefaultTolerance);

/// Eigendecomposition of a 2x2 Hermitian matrix, descending eigenvalues.
/// A degenerate pair returns the standard basis.
struct Eigen2 {
    double values[2];
    std::vector<Complex> vectors[2];
};
Eigen2 eigen_hermitian2(const ComplexMatrix &m, double degeneracy_tol = 1e-12);

/// Multiplies v by a phase so its first component with |v_i| > tol is real positive.
void canonicalize_phase(std::vector<Complex> &v, double tol = 1e-12);

}  // namespace bornv
