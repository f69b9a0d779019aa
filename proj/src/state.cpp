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

#include "bornverifier/state.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bornv {

namespace {

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size());
    std::size_t s = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
        strides[k] = s;
        s *= dims[k];
    }
    return strides;
}

}  // namespace

std::size_t checked_total_dim(std::span<const std::size_t> dims, std::size_t max_dim) {
    if (dims.empty()) {
        throw std::invalid_argument("A state needs at least one factor.");
    }
    std::size_t total = 1;
    for (auto d : dims) {
        if (d < 2) {
            throw std::invalid_argument("Factor dimensions must be at least 2, got " + std::to_string(d) + ".");
        }
        if (total > max_dim / d) {
            throw std::length_error(
                "Total dimension of " + describe_dims(dims) + " exceeds the maximum " + std::to_string(max_dim) + ".");
        }
        total *= d;
    }
    return total;
}

Ket::Ket(std::vector<std::size_t> factor_dims, std::vector<Complex> amps)
    : dims(std::move(factor_dims)), amplitudes(std::move(amps)) {
    std::size_t total = checked_total_dim(dims);
    if (total != amplitudes.size()) {
        throw std::invalid_argument(
            "Amplitude count " + std::to_string(amplitudes.size()) + " does not match dims " + describe_dims(dims) + ".");
    }
    for (const auto &z : amplitudes) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("Amplitudes must be finite.");
        }
    }
}

StateVector::StateVector(std::vector<std::size_t> factor_dims, std::vector<Complex> amps, double tol)
    : StateVector(Ket(std::move(factor_dims), std::move(amps)), tol) {
}

StateVector::StateVector(Ket ket, double tol) : ket_(std::move(ket)) {
    checked_total_dim(ket_.dims);
    double n = std::sqrt(ket_.norm_squared());
    if (std::abs(n - 1.0) > tol) {
        throw std::invalid_argument("State vector is not normalized (norm " + std::to_string(n) + ").");
    }
}

StateVector StateVector::normalized(Ket ket) {
    double n = std::sqrt(ket.norm_squared());
    if (n == 0) {
        throw std::invalid_argument("Cannot normalize the zero vector.");
    }
    for (auto &z : ket.amplitudes) {
        z /= n;
    }
    return StateVector(std::move(ket));
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::span<const std::size_t> digits) {
    if (digits.size() != dims.size()) {
        throw std::invalid_argument("Basis digit count does not match factor count.");
    }
    std::size_t total = checked_total_dim(dims);
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (digits[k] >= dims[k]) {
            throw std::out_of_range("Basis digit out of range for factor " + std::to_string(k) + ".");
        }
        index = index * dims[k] + digits[k];
    }
    std::vector<Complex> amps(total);
    amps[index] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
}

StateVector StateVector::up() {
    return StateVector({2}, {1.0, 0.0});
}

StateVector StateVector::down() {
    return StateVector({2}, {0.0, 1.0});
}

StateVector StateVector::s_lambda(double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) {
        throw std::invalid_argument("lambda must lie in [0, 1].");
    }
    return StateVector({2, 2}, {std::sqrt(1 - lambda), 0.0, 0.0, std::sqrt(lambda)});
}

Ket tensor_product(const Ket &a, const Ket &b, std::size_t max_dim) {
    std::vector<std::size_t> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    checked_total_dim(dims, max_dim);
    return Ket(std::move(dims), kron(a.amplitudes, b.amplitudes));
}

StateVector tensor_product(const StateVector &a, const StateVector &b, std::size_t max_dim) {
    return StateVector(tensor_product(a.ket(), b.ket(), max_dim));
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t max_dim) {
    if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim) {
        throw std::length_error("Operator tensor product exceeds the maximum dimension.");
    }
    return kron(a, b);
}

Ket apply_on_factors(const Ket &ket, std::span<const std::size_t> factors, const ComplexMatrix &op) {
    const auto strides = strides_of(ket.dims);
    std::size_t sub_dim = 1;
    std::vector<bool> used(ket.dims.size(), false);
    for (auto f : factors) {
        if (f >= ket.dims.size()) {
            throw std::out_of_range("Factor index " + std::to_string(f) + " out of range.");
        }
        if (used[f]) {
            throw std::invalid_argument("Factor index " + std::to_string(f) + " listed twice.");
        }
        used[f] = true;
        sub_dim *= ket.dims[f];
    }
    if (op.rows() != sub_dim || op.cols() != sub_dim) {
        throw std::invalid_argument(
            "Operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) + " but the factors span " +
            std::to_string(sub_dim) + " dimensions.");
    }
    // Offset of each sub-index relative to a base index whose listed digits are zero.
    std::vector<std::size_t> offsets(sub_dim, 0);
    for (std::size_t s = 0; s < sub_dim; s++) {
        std::size_t rem = s;
        std::size_t off = 0;
        for (std::size_t j = factors.size(); j-- > 0;) {
            std::size_t d = ket.dims[factors[j]];
            off += (rem % d) * strides[factors[j]];
            rem /= d;
        }
        offsets[s] = off;
    }
    Ket out = ket;
    std::vector<Complex> gathered(sub_dim);
    for (std::size_t base = 0; base < ket.total_dim(); base++) {
        bool is_base = true;
        for (auto f : factors) {
            if (factor_digit(ket.dims, base, f) != 0) {
                is_base = false;
                break;
            }
        }
        if (!is_base) {
            continue;
        }
        for (std::size_t s = 0; s < sub_dim; s++) {
            gathered[s] = ket.amplitudes[base + offsets[s]];
        }
        for (std::size_t r = 0; r < sub_dim; r++) {
            Complex acc{};
            for (std::size_t c = 0; c < sub_dim; c++) {
                acc += op(r, c) * gathered[c];
            }
            out.amplitudes[base + offsets[r]] = acc;
        }
    }
    return out;
}

Ket append_factor(const Ket &ket, std::span<const Complex> factor_state, std::size_t max_dim) {
    Ket f({factor_state.size()}, std::vector<Complex>(factor_state.begin(), factor_state.end()));
    return tensor_product(ket, f, max_dim);
}

Ket permute_factors(const Ket &ket, std::span<const std::size_t> order) {
    if (order.size() != ket.dims.size()) {
        throw std::invalid_argument("Permutation size does not match factor count.");
    }
    std::vector<bool> seen(order.size(), false);
    std::vector<std::size_t> dims(order.size());
    for (std::size_t k = 0; k < order.size(); k++) {
        if (order[k] >= order.size() || seen[order[k]]) {
            throw std::invalid_argument("Invalid factor permutation.");
        }
        seen[order[k]] = true;
        dims[k] = ket.dims[order[k]];
    }
    const auto src_strides = strides_of(ket.dims);
    Ket out(dims, std::vector<Complex>(ket.total_dim()));
    for (std::size_t i = 0; i < out.total_dim(); i++) {
        std::size_t rem = i;
        std::size_t src = 0;
        for (std::size_t k = dims.size(); k-- > 0;) {
            src += (rem % dims[k]) * src_strides[order[k]];
            rem /= dims[k];
        }
        out.amplitudes[i] = ket.amplitudes[src];
    }
    return out;
}

std::size_t factor_digit(std::span<const std::size_t> dims, std::size_t index, std::size_t factor) {
    for (std::size_t k = dims.size(); k-- > factor + 1;) {
        index /= dims[k];
    }
    return index % dims[factor];
}

std::string describe_dims(std::span<const std::size_t> dims) {
    std::string s = "[";
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (k) {
            s += "x";
        }
        s += std::to_string(dims[k]);
    }
    return s + "]";
}

}  // namespace bornv
