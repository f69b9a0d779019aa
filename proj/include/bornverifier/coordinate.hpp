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

#include <istream>
#include <optional>
#include <vector>

#include "bornverifier/detectors.hpp"
#include "bornverifier/report.hpp"

namespace bornv {

/// Samples psi(x_i) at the left edges x_i = x_min + i dx of n cells covering
/// [x_min, x_max), dx = (x_max - x_min) / n. Normalized so sum |psi_i|^2 dx = 1.
class Wavefunction1D {
   public:
    Wavefunction1D(double x_min, double x_max, std::vector<Complex> values, double tol = kDefaultTolerance);

    /// Constant amplitude, rescaled to unit discrete norm.
    static Wavefunction1D uniform(double x_min, double x_max, std::size_t n);
    /// exp(-(x - mu)^2 / (4 sigma^2)), so |psi|^2 has standard deviation sigma.
    static Wavefunction1D gaussian(double mu, double sigma, double x_min, double x_max, std::size_t n);
    /// Any non-zero samples, rescaled to unit discrete norm.
    static Wavefunction1D normalized(double x_min, double x_max, std::vector<Complex> values);
    /// Whitespace-separated rows "x re" or "x re im" on a uniform grid; '#' starts a comment.
    /// The samples are rescaled to unit discrete norm.
    static Wavefunction1D read(std::istream &in);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return values_.size(); }
    double dx() const { return (x_max_ - x_min_) / static_cast<double>(values_.size()); }
    double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx(); }
    const std::vector<Complex> &values() const { return values_; }

    bool operator==(const Wavefunction1D &) const = default;

   private:
    double x_min_, x_max_;
    std::vector<Complex> values_;
};

/// Clicks for everything found in the closed range [x1, x2].
struct IntervalDetector {
    double x1 = 0;
    double x2 = 0;

    IntervalDetector(double x1, double x2);
    bool contains(double x) const { return x >= x1 && x <= x2; }
};

/// psi = c0 phi0 + c1 phi1 with phi1 supported on the interval and phi0 outside it.
/// A branch with zero weight has no normalized phi; it is left empty.
struct IntervalDecomposition {
    double c0 = 0;
    double c1 = 0;
    std::optional<Wavefunction1D> phi0;
    std::optional<Wavefunction1D> phi1;
};

IntervalDecomposition decompose_interval(const Wavefunction1D &psi, const IntervalDetector &det);

/// sum over grid points inside [x1, x2] of |psi_i|^2 dx
double born_integral(const Wavefunction1D &psi, const IntervalDetector &det);

/// Polarization of the isospin |down> chi0 + |up> chi1:
/// (2 Re<chi1|chi0>, 2 Im<chi1|chi0>, <chi1|chi1> - <chi0|chi0>).
BlochVector isospin_polarization(std::span<const Complex> chi0, std::span<const Complex> chi1,
                                 double tol = kDefaultTolerance);

/// Recasts the two-branch decomposition as an isospin entangled with a
/// two-dimensional environment, prices it with `click_model` (the interval
/// detector acting on the isospin) and checks the click probability against
/// c1^2 through tomography and the pure-state rule.
VerificationReport verify_isospin_born(const ClickOracle &click_model, const Wavefunction1D &psi,
                                       const IntervalDetector &det, double tol = kDefaultTolerance);
/// Same, with the ideal isospin detector: projective along +z.
VerificationReport verify_isospin_born(const Wavefunction1D &psi, const IntervalDetector &det,
                                       double tol = kDefaultTolerance);

}  // namespace bornv
