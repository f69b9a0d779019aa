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

#include "bornverifier/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bornv {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument(
            "Matrix entry count " + std::to_string(data_.size()) + " does not match " + std::to_string(rows_) + "x" +
            std::to_string(cols_) + ".");
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("Matrix entries must be finite.");
        }
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("Ragged matrix literal.");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t r = 0; r < ket.size(); r++) {
        for (std::size_t c = 0; c < bra.size(); c++) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("Matrix product dimension mismatch.");
    }
    ComplexMatrix m(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t k = 0; k < cols_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols_; c++) {
                m(r, c) += a * rhs(k, c);
            }
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("Matrix sum dimension mismatch.");
    }
    ComplexMatrix m = *this;
    for (std::size_t k = 0; k < data_.size(); k++) {
        m.data_[k] += rhs.data_[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &rhs) const {
    return *this + rhs * Complex{-1.0};
}

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    ComplexMatrix m = *this;
    for (auto &z : m.data_) {
        z *= scale;
    }
    return m;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("Matrix-vector dimension mismatch.");
    }
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        Complex acc{};
        for (std::size_t c = 0; c < cols_; c++) {
            acc += (*this)(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t{};
    for (std::size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("Matrix comparison dimension mismatch.");
    }
    double d = 0;
    for (std::size_t k = 0; k < data_.size(); k++) {
        d = std::max(d, std::abs(data_[k] - other.data_[k]));
    }
    return d;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return is_square() && max_abs_diff(adjoint()) <= tol;
}

bool ComplexMatrix::is_unitary(double tol) const {
    return is_square() && (adjoint() * *this).max_abs_diff(identity(rows_)) <= tol;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    m(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return m;
}

namespace pauli {
ComplexMatrix I() {
    return ComplexMatrix::identity(2);
}
ComplexMatrix X() {
    return {{0, 1}, {1, 0}};
}
ComplexMatrix Y() {
    return {{0, Complex{0, -1}}, {Complex{0, 1}, 0}};
}
ComplexMatrix Z() {
    return {{1, 0}, {0, -1}};
}
}  // namespace pauli

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) {
        throw std::invalid_argument("Inner product dimension mismatch.");
    }
    Complex acc{};
    for (std::size_t k = 0; k < bra.size(); k++) {
        acc += std::conj(bra[k]) * ket[k];
    }
    return acc;
}

double norm_squared(std::span<const Complex> v) {
    double acc = 0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return acc;
}

double norm(std::span<const Complex> v) {
    return std::sqrt(norm_squared(v));
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("Vector comparison dimension mismatch.");
    }
    double d = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

std::vector<Complex> basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("Basis index out of range.");
    }
    std::vector<Complex> v(dim);
    v[index] = 1.0;
    return v;
}

std::vector<std::vector<Complex>> complete_orthonormal_basis(
    const std::vector<std::vector<Complex>> &orthonormal, std::size_t dim, double tol) {
    std::vector<std::vector<Complex>> basis;
    for (const auto &v : orthonormal) {
        if (v.size() != dim) {
            throw std::invalid_argument("Basis vector has wrong dimension.");
        }
        if (std::abs(norm(v) - 1.0) > tol) {
            throw std::invalid_argument("Basis vector is not normalized.");
        }
        for (const auto &b : basis) {
            if (std::abs(inner(b, v)) > tol) {
                throw std::invalid_argument("Basis vectors are not mutually orthogonal.");
            }
        }
        basis.push_back(v);
    }
    if (basis.size() > dim) {
        throw std::invalid_argument("More orthonormal vectors than the space dimension.");
    }
    // Modified Gram-Schmidt, applied twice for stability.
    for (std::size_t k = 0; k < dim && basis.size() < dim; k++) {
        std::vector<Complex> v = basis_vector(dim, k);
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                Complex overlap = inner(b, v);
                for (std::size_t i = 0; i < dim; i++) {
                    v[i] -= overlap * b[i];
                }
            }
        }
        double n = norm(v);
        if (n < 1e-6) {
            continue;
        }
        for (auto &z : v) {
            z /= n;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

ComplexMatrix map_orthonormal_sets(
    const std::vector<std::vector<Complex>> &sources,
    const std::vector<std::vector<Complex>> &targets,
    double tol) {
    if (sources.size() != targets.size() || sources.empty()) {
        throw std::invalid_argument("Source and target sets must be non-empty and of equal size.");
    }
    std::size_t dim = sources.front().size();
    if (targets.front().size() != dim) {
        throw std::invalid_argument("Source and target vectors live in different spaces.");
    }
    auto src = complete_orthonormal_basis(sources, dim, tol);
    auto dst = complete_orthonormal_basis(targets, dim, tol);
    ComplexMatrix u(dim, dim);
    for (std::size_t k = 0; k < dim; k++) {
        u = u + ComplexMatrix::outer(dst[k], src[k]);
    }
    return u;
}

Eigen2 eigen_hermitian2(const ComplexMatrix &m, double degeneracy_tol) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("eigen_hermitian2 requires a 2x2 matrix.");
    }
    double a = m(0, 0).real();
    double c = m(1, 1).real();
    Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    double mean = 0.5 * (a + c);
    double half = 0.5 * (a - c);
    double r = std::hypot(half, std::abs(b));
    Eigen2 out;
    out.values[0] = mean + r;
    out.values[1] = mean - r;
    if (r <= degeneracy_tol) {
        out.vectors[0] = {1.0, 0.0};
        out.vectors[1] = {0.0, 1.0};
        return out;
    }
    std::vector<Complex> v;
    if (half >= 0) {
        v = {r + half, std::conj(b)};
    } else {
        v = {b, r - half};
    }
    double n = norm(v);
    for (auto &z : v) {
        z /= n;
    }
    canonicalize_phase(v);
    std::vector<Complex> w{-std::conj(v[1]), std::conj(v[0])};
    canonicalize_phase(w);
    out.vectors[0] = std::move(v);
    out.vectors[1] = std::move(w);
    return out;
}

void canonicalize_phase(std::vector<Complex> &v, double tol) {
    for (const auto &z : v) {
        double mag = std::abs(z);
        if (mag > tol) {
            Complex phase = std::conj(z) / mag;
            for (auto &y : v) {
                y *= phase;
            }
            return;
        }
    }
}

}  // namespace bornv
