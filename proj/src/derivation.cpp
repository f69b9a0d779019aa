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

#include "bornverifier/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bornverifier/counterexamples.hpp"
#include "bornverifier/identities.hpp"

namespace bornv {

namespace {

std::string fmt(const BlochVector &p) {
    std::ostringstream s;
    s.precision(6);
    s << "(" << p.x << ", " << p.y << ", " << p.z << ")";
    return s.str();
}

// c1 a1 (x) b1 + c2 a2 (x) b2 as a 2 x d state.
StateVector schmidt_state(
    double c1, double c2, const std::vector<Complex> &a1, const std::vector<Complex> &a2,
    const std::vector<Complex> &b1, const std::vector<Complex> &b2) {
    SchmidtForm s{c1, c2, a1, a2, b1, b2};
    return StateVector(s.reconstruct());
}

std::vector<Complex> column(const ComplexMatrix &m, std::size_t c) {
    std::vector<Complex> v(m.rows());
    for (std::size_t r = 0; r < m.rows(); r++) {
        v[r] = m(r, c);
    }
    return v;
}

std::vector<Complex> orthogonal_spinor(const std::vector<Complex> &a) {
    return {-std::conj(a[1]), std::conj(a[0])};
}

Ket scaled_sum(double w0, const Ket &k0, double w1, const Ket &k1) {
    std::vector<Complex> amps(k0.total_dim());
    for (std::size_t i = 0; i < amps.size(); i++) {
        amps[i] = w0 * k0.amplitudes[i] + w1 * k1.amplitudes[i];
    }
    return Ket(k0.dims, std::move(amps));
}

}  // namespace

VerificationReport verify_envariance(
    const ClickOracle &det, std::size_t trials, std::uint64_t seed, std::size_t env_dim, double tol) {
    Rng rng(seed);
    VerificationReport r(
        "envariance", std::to_string(trials) + " trial(s), environment dimension " + std::to_string(env_dim), tol);
    double worst_p = 0;
    double worst_map = 0;
    double worst_unitary = 0;
    for (std::size_t t = 0; t < trials; t++) {
        // Trial 0 reuses one basis, trial 1 is a product state; the rest are generic.
        double theta = uniform01(rng) * M_PI / 4;
        double c1 = std::cos(theta);
        double c2 = t == 1 ? 0.0 : std::sin(theta);
        if (t == 1) {
            c1 = 1.0;
        }
        auto a1 = random_unit_vector(rng, 2);
        auto a2 = orthogonal_spinor(a1);
        ComplexMatrix basis_p = random_unitary(rng, env_dim);
        ComplexMatrix basis_pp = t == 0 ? basis_p : random_unitary(rng, env_dim);
        auto b1p = column(basis_p, 0);
        auto b2p = column(basis_p, 1);
        auto b1pp = column(basis_pp, 0);
        auto b2pp = column(basis_pp, 1);

        StateVector psi_p = schmidt_state(c1, c2, a1, a2, b1p, b2p);
        StateVector psi_pp = schmidt_state(c1, c2, a1, a2, b1pp, b2pp);
        worst_p = std::max(worst_p, std::abs(det.click_probability(psi_p, 0) - det.click_probability(psi_pp, 0)));

        ComplexMatrix u = envariance_unitary(b1p, b2p, b1pp, b2pp);
        worst_unitary = std::max(worst_unitary, (u.adjoint() * u).max_abs_diff(ComplexMatrix::identity(env_dim)));
        const std::size_t env[] = {1};
        Ket mapped = apply_on_factors(psi_p.ket(), env, u);
        worst_map = std::max(worst_map, max_abs_diff(mapped.amplitudes, psi_pp.amplitudes()));
    }
    r.deviation("click_probability_deviation", worst_p);
    r.deviation("mapping_residual", worst_map);
    r.deviation("unitarity_residual", worst_unitary);
    return r.finalize();
}

VerificationReport verify_lemma1(
    const ClickOracle &det, const BlochVector &p0, const BlochVector &p1, double lambda, double tol) {
    if (!(lambda >= 0 && lambda <= 1)) {
        throw std::invalid_argument("lambda must lie in [0, 1].");
    }
    require_in_ball(p0, tol);
    require_in_ball(p1, tol);
    std::ostringstream in;
    in.precision(17);
    in << "p0 " << fmt(p0) << ", p1 " << fmt(p1) << ", lambda " << lambda;
    VerificationReport r("lemma1", in.str(), tol);

    const StateVector psi0 = purify(p0);
    const StateVector psi1 = purify(p1);
    const Ket upup = StateVector::basis({2, 2}, std::vector<std::size_t>{0, 0}).ket();
    const Ket dndn = StateVector::basis({2, 2}, std::vector<std::size_t>{1, 1}).ket();
    const StateVector big_psi = StateVector(
        scaled_sum(std::sqrt(1 - lambda), tensor_product(psi0.ket(), upup), std::sqrt(lambda),
                   tensor_product(psi1.ket(), dndn)));

    // (a) polarization of the four-spin state
    BlochVector p_mix = p0 * (1 - lambda) + p1 * lambda;
    r.deviation("a_polarization", bloch_polarization(big_psi, 0).max_abs_diff(p_mix));

    // (b) V maps psi0|up> -> |up up up>, psi1|down> -> |up up down>
    const Ket up = StateVector::up().ket();
    const Ket down = StateVector::down().ket();
    auto src0 = tensor_product(psi0.ket(), up).amplitudes;
    auto src1 = tensor_product(psi1.ket(), down).amplitudes;
    ComplexMatrix v = map_orthonormal_sets({src0, src1}, {basis_vector(8, 0), basis_vector(8, 1)});
    ComplexMatrix v_inv = v.adjoint();
    const std::size_t first_three[] = {0, 1, 2};
    Ket v_psi = apply_on_factors(big_psi.ket(), first_three, v);
    Ket target = tensor_product(upup, StateVector::s_lambda(lambda).ket());
    r.deviation("b_v_mapping", max_abs_diff(v_psi.amplitudes, target.amplitudes));
    r.deviation("b_v_unitarity", (v_inv * v).max_abs_diff(ComplexMatrix::identity(8)));

    // (c) the proof chain, each line priced by the oracle
    const double f0 = det.click_probability(psi0, 0);
    const double f1 = det.click_probability(psi1, 0);
    const double a_lambda = sg_measure(StateVector::s_lambda(lambda), 1)[0].probability;
    const double step0 = det.click_probability(big_psi, 0);
    const double step1 = det.click_probability(
        StateVector(apply_on_factors(apply_on_factors(big_psi.ket(), first_three, v), first_three, v_inv)), 0);
    const double step2 = det.click_probability(StateVector(apply_on_factors(target, first_three, v_inv)), 0);
    auto three = [](std::size_t last) { return StateVector::basis({2, 2, 2}, std::vector<std::size_t>{0, 0, last}); };
    const double cond_up = det.click_probability(StateVector(apply_on_factors(three(0).ket(), first_three, v_inv)), 0);
    const double cond_down =
        det.click_probability(StateVector(apply_on_factors(three(1).ket(), first_three, v_inv)), 0);
    const double step3 = a_lambda * cond_up + (1 - a_lambda) * cond_down;
    const double step4 = a_lambda * det.click_probability(StateVector(tensor_product(psi0.ket(), up)), 0) +
                         (1 - a_lambda) * det.click_probability(StateVector(tensor_product(psi1.ket(), down)), 0);
    const double step5 = a_lambda * f0 + (1 - a_lambda) * f1;
    const double f_mix = probe_fclick(det, p_mix);

    r.detail("F_p0", f0);
    r.detail("F_p1", f1);
    r.detail("F_mix", f_mix);
    r.detail("a_lambda", a_lambda);
    r.deviation("c_insert_v_vinv", step1 - step0);
    r.deviation("c_apply_v_property", step2 - step1);
    r.deviation("c_sg_decomposition", step3 - step2);
    r.deviation("c_v_inverse", step4 - step3);
    r.deviation("c_drop_ancilla", step5 - step4);
    r.deviation("c_function_of_polarization", f_mix - step0);
    r.deviation("c_convex_identity", f_mix - step5);

    // (d) betweenness, non-strict, as a violation amount
    double lo = std::min(f0, f1);
    double hi = std::max(f0, f1);
    r.deviation("d_betweenness_violation", std::max({0.0, lo - f_mix, f_mix - hi}));

    r.deviation("a_lambda_vs_one_minus_lambda", a_lambda - (1 - lambda));
    return r.finalize();
}

VerificationReport verify_lemma2(const ClickOracle &det, const BlochVector &p0, const BlochVector &p1, double tol) {
    VerificationReport r("lemma2", "p0 " + fmt(p0) + ", p1 " + fmt(p1), tol);
    const double f0 = probe_fclick(det, p0);
    const double f1 = probe_fclick(det, p1);
    const double f_mid = probe_fclick(det, (p0 + p1) * 0.5);
    r.detail("F_p0", f0);
    r.detail("F_p1", f1);
    r.detail("F_mid", f_mid);
    r.deviation("midpoint", f_mid - 0.5 * (f0 + f1));

    // Both orderings of the lambda = 1/2 construction.
    auto forward = verify_lemma1(det, p0, p1, 0.5, tol);
    auto swapped = verify_lemma1(det, p1, p0, 0.5, tol);
    merge_report(r, forward, "forward/");
    merge_report(r, swapped, "swapped/");

    const StateVector bell = StateVector({2, 2}, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    const double a_half = sg_measure(bell, 1)[0].probability;
    r.detail("a_half", a_half);
    r.deviation("a_half_balance", a_half - 0.5);
    if (std::abs(f0 - f1) > 1e-6) {
        // From F_mid = a F0 + (1 - a) F1.
        r.detail("a_half_from_midpoint", (f_mid - f1) / (f0 - f1));
    }
    return r.finalize();
}

VerificationReport verify_lemma3_dyadic(
    const ClickOracle &det, const BlochVector &p0, const BlochVector &p1, std::uint64_t seed,
    const DyadicOptions &options, double tol) {
    if (options.depth < 1 || options.depth > 52) {
        throw std::invalid_argument("Dyadic depth must be in [1, 52].");
    }
    VerificationReport r("lemma3", "p0 " + fmt(p0) + ", p1 " + fmt(p1) + ", k " + std::to_string(options.depth), tol);
    Rng rng(seed);
    auto point = [&](double x) {
        BlochVector p = p0 * (1 - x) + p1 * x;
        // Convex combinations can overshoot the sphere by rounding.
        double n = p.norm();
        return n > 1 ? p * (1 / n) : p;
    };
    const double f_0 = probe_fclick(det, p0);
    const double f_1 = probe_fclick(det, p1);
    const double delta = f_1 - f_0;
    r.detail("F_p0", f_0);
    r.detail("F_p1", f_1);

    std::vector<double> xs;
    for (std::size_t i = 0; i < options.random_points; i++) {
        xs.push_back(uniform01(rng));
    }

    if (std::abs(delta) < 1e-6) {
        r.note("flat segment: F(p0) = F(p1), checked for constancy");
        double worst = 0;
        for (double x : xs) {
            worst = std::max(worst, std::abs(probe_fclick(det, point(x)) - f_0));
        }
        r.deviation("flat_constancy", worst);
        return r.finalize();
    }

    auto f = [&](double x) { return (probe_fclick(det, point(x)) - f_0) / delta; };
    DyadicProfile profile;
    profile.depth = options.depth;
    const double bound = std::ldexp(1.0, -options.depth);

    std::vector<std::pair<double, double>> grid;
    double worst_dyadic = 0;
    const int level = std::min(options.depth, options.exhaustive_level);
    const std::uint64_t denom = std::uint64_t{1} << level;
    for (std::uint64_t p = 0; p <= denom; p++) {
        double x = static_cast<double>(p) / static_cast<double>(denom);
        double fx = x == 0 ? 0.0 : (x == 1 ? 1.0 : f(x));
        grid.emplace_back(x, fx);
        worst_dyadic = std::max(worst_dyadic, std::abs(fx - x));
    }
    r.detail("endpoint_f0", 0.0);
    r.detail("endpoint_f1", (probe_fclick(det, p1) - f_0) / delta);

    double worst_sandwich_excess = 0;
    double worst_order = 0;
    double sup_dev = 0;
    const double scale = std::ldexp(1.0, options.depth);
    for (double x : xs) {
        double x_minus = std::floor(scale * x) / scale;
        double x_plus = x_minus + bound;
        double fx = f(x);
        double f_minus = f(x_minus);
        double f_plus = f(x_plus);
        grid.emplace_back(x, fx);
        grid.emplace_back(x_minus, f_minus);
        grid.emplace_back(x_plus, f_plus);
        worst_dyadic = std::max({worst_dyadic, std::abs(f_minus - x_minus), std::abs(f_plus - x_plus)});
        worst_order = std::max({worst_order, f_minus - fx, fx - f_plus});
        double dev = std::abs(fx - x);
        sup_dev = std::max(sup_dev, dev);
        worst_sandwich_excess = std::max(worst_sandwich_excess, dev - bound);
        profile.samples.push_back({x, fx, bound});
    }

    std::sort(grid.begin(), grid.end());
    double worst_monotone = 0;
    for (std::size_t i = 1; i < grid.size(); i++) {
        worst_monotone = std::max(worst_monotone, grid[i - 1].second - grid[i].second);
    }

    r.detail("sup_abs_f_minus_x", sup_dev);
    r.detail("bound", bound);
    r.deviation("dyadic_values", worst_dyadic);
    r.deviation("monotonicity_violation", std::max(0.0, worst_monotone));
    r.deviation("sandwich_order_violation", std::max(0.0, worst_order));
    r.deviation("sandwich_bound_excess", std::max(0.0, worst_sandwich_excess));
    r.dyadic = std::move(profile);
    return r.finalize();
}

VerificationReport verify_theorem1(const ClickOracle &det, std::size_t n_points, std::uint64_t seed, double tol) {
    Rng rng(seed);
    VerificationReport r("theorem1", std::to_string(n_points) + " random point(s)", tol);
    const AffineResponse resp = extract_affine(det);
    r.detail("alpha_x", resp.alpha.x);
    r.detail("alpha_y", resp.alpha.y);
    r.detail("alpha_z", resp.alpha.z);
    r.detail("beta", resp.beta);

    double worst_probe = 0;
    double worst_path = 0;
    std::vector<BlochVector> points{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (std::size_t i = 0; i < n_points; i++) {
        points.push_back(random_ball_point(rng));
    }
    for (const auto &p : points) {
        double probe = probe_fclick(det, p);
        worst_probe = std::max(worst_probe, std::abs(probe - resp.evaluate(p)));
        worst_path = std::max(worst_path, std::abs(linear_extension(resp, p) - probe));
    }
    r.deviation("probe_vs_affine", worst_probe);
    r.deviation("four_step_path_vs_probe", worst_path);

    // States with a three-dimensional environment.
    double worst_env = 0;
    for (std::size_t i = 0; i < std::max<std::size_t>(n_points / 4, 8); i++) {
        StateVector psi = random_state(rng, {2, 3});
        worst_env = std::max(worst_env, std::abs(det.click_probability(psi, 0) -
                                                 resp.evaluate(bloch_polarization(psi, 0))));
    }
    r.deviation("entangled_environment", worst_env);

    // Ensembles: the response stays affine in the averaged polarization.
    double worst_mix = 0;
    for (std::size_t i = 0; i < std::max<std::size_t>(n_points / 4, 8); i++) {
        std::vector<std::pair<double, StateVector>> ensemble;
        double w[3] = {uniform01(rng), uniform01(rng), uniform01(rng)};
        double total = w[0] + w[1] + w[2];
        BlochVector p_avg;
        for (double wk : w) {
            StateVector psi = random_state(rng, {2, 2});
            p_avg = p_avg + bloch_polarization(psi, 0) * (wk / total);
            ensemble.emplace_back(wk / total, std::move(psi));
        }
        worst_mix = std::max(worst_mix, std::abs(mixed_click_probability(ensemble, det) - resp.evaluate(p_avg)));
    }
    r.deviation("mixed_ensembles", worst_mix);

    try {
        PovmEffect m = to_povm(resp, tol);
        auto eig = eigen_hermitian2(m.m);
        r.detail("povm_eigenvalue_min", eig.values[1]);
        r.detail("povm_eigenvalue_max", eig.values[0]);
        r.deviation("povm_positivity_violation",
                    std::max({0.0, -1e-12 - eig.values[1], eig.values[0] - 1 - 1e-12}));
    } catch (const NonPhysicalResponse &e) {
        r.note(e.what());
        r.deviation("povm_positivity_violation", std::numeric_limits<double>::infinity());
    }
    return r.finalize();
}

VerificationReport verify_theorem2(const ClickOracle &det, std::size_t n_states, std::uint64_t seed, double tol) {
    Rng rng(seed);
    VerificationReport r("theorem2", std::to_string(n_states) + " random state(s)", tol);
    const AffineResponse resp = extract_affine(det);
    const double a = resp.alpha.norm();
    BlochVector n{0, 0, 1};
    if (a < 1e-12) {
        r.note("constant response: no preferred direction, z axis used");
    } else {
        n = resp.alpha * (1 / a);
    }
    const auto phi_up = spinor_along(n);
    const auto phi_down = spinor_along(-n);
    r.detail("n_x", n.x);
    r.detail("n_y", n.y);
    r.detail("n_z", n.z);
    r.deviation("eigenvector_orthogonality", std::abs(inner(phi_up, phi_down)));
    r.deviation("phi_up_polarization", bloch_polarization(Ket({2}, phi_up), 0).max_abs_diff(n));

    auto single = [](std::vector<Complex> v) { return StateVector(Ket({2}, std::move(v))); };
    const double p_max = det.click_probability(single(phi_up), 0);
    const double p_min = det.click_probability(single(phi_down), 0);
    r.detail("p_up_max", p_max);
    r.detail("p_up_min", p_min);
    r.deviation("p_max_vs_affine", p_max - (a + resp.beta));
    r.deviation("p_min_vs_affine", p_min - (resp.beta - a));

    const bool ideal = std::abs(p_max - 1) <= tol && std::abs(p_min) <= tol;
    r.detail("ideal", ideal ? 1.0 : 0.0);
    if (!ideal) {
        r.note("non-ideal device: generalized rule (Pmax - Pmin) <phi|rho|phi> + Pmin checked");
    }
    const double down_max = 1 - p_min;
    const double down_min = 1 - p_max;

    // Rotation taking phi_up to |up>, for the branch-norm cross-check.
    ComplexMatrix rot = map_orthonormal_sets({phi_up, phi_down}, {basis_vector(2, 0), basis_vector(2, 1)});

    double worst_pure = 0;
    double worst_down = 0;
    double worst_branch = 0;
    for (std::size_t i = 0; i < n_states; i++) {
        auto psi = random_unit_vector(rng, 2);
        double overlap_up = std::norm(inner(phi_up, psi));
        double overlap_down = std::norm(inner(phi_down, psi));
        double p_up = det.click_probability(single(psi), 0);
        double predicted = ideal ? overlap_up : (p_max - p_min) * overlap_up + p_min;
        worst_pure = std::max(worst_pure, std::abs(p_up - predicted));
        worst_down = std::max(worst_down, std::abs((1 - p_up) - ((down_max - down_min) * overlap_down + down_min)));
        double branch = sg_measure(single(rot.apply(psi)), 0)[0].probability;
        worst_branch = std::max(worst_branch, std::abs(branch - overlap_up));
    }
    r.deviation("pure_state_rule", worst_pure);
    r.deviation("down_complement_rule", worst_down);
    r.deviation("branch_norm_consistency", worst_branch);

    double worst_mixed = 0;
    for (std::size_t i = 0; i < std::max<std::size_t>(n_states / 10, 10); i++) {
        std::vector<std::pair<double, StateVector>> ensemble;
        ComplexMatrix rho(2, 2);
        double w[3] = {uniform01(rng), uniform01(rng), uniform01(rng)};
        double total = w[0] + w[1] + w[2];
        for (double wk : w) {
            auto psi = random_unit_vector(rng, 2);
            rho = rho + ComplexMatrix::outer(psi, psi) * Complex{wk / total};
            ensemble.emplace_back(wk / total, single(psi));
        }
        double expect = inner(phi_up, rho.apply(phi_up)).real();
        double predicted = ideal ? expect : (p_max - p_min) * expect + p_min;
        worst_mixed = std::max(worst_mixed, std::abs(mixed_click_probability(ensemble, det) - predicted));
    }
    r.deviation("mixed_state_rule", worst_mixed);
    return r.finalize();
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
    // FNV-1a over the name, folded with the run seed.
    std::uint64_t h = 0xcbf29ce484222325ull ^ seed;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    return h ^ (h >> 33);
}

std::vector<NamedDetector> standard_detector_battery(std::uint64_t seed, std::size_t random_count) {
    auto share = [](Detector d) { return std::make_shared<const Detector>(std::move(d)); };
    std::vector<NamedDetector> out;
    out.push_back({"sg", share(Detector::projective({0, 0, 1}))});
    out.push_back({"cnot-ancilla", share(Detector::cnot_up())});
    out.push_back({"x-effect", share(Detector::effect((pauli::I() + pauli::X()) * Complex{0.5}))});
    ComplexMatrix noisy{{0.9, 0}, {0, 0.1}};
    out.push_back({"noisy", share(Detector::effect(noisy))});
    out.push_back({"constant", share(Detector::effect(pauli::I() * Complex{0.3}))});
    Rng rng(derive_seed(seed, "battery"));
    for (std::size_t i = 0; i < random_count; i++) {
        char name[32];
        std::snprintf(name, sizeof name, "random-%02zu", i);
        out.push_back({name, share(random_detector(rng))});
    }
    return out;
}

namespace {

std::vector<std::string> split_prefixes(const std::string &subset) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : subset + ",") {
        if (ch == ',') {
            if (!cur.empty()) {
                out.push_back(cur);
            }
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    return out;
}

}  // namespace

std::vector<VerificationReport> run_full_suite(std::uint64_t seed, double tol, const SuiteOptions &options) {
    const auto prefixes = split_prefixes(options.subset);
    auto wanted = [&](const std::string &name) {
        if (prefixes.empty()) {
            return true;
        }
        return std::any_of(prefixes.begin(), prefixes.end(),
                           [&](const std::string &p) { return name.compare(0, p.size(), p) == 0; });
    };
    const bool cubic = options.inject == Injection::Cubic3;

    std::vector<VerificationReport> out;
    auto emit = [&](VerificationReport r, const std::string &name) {
        r.name = name;
        if (cubic) {
            r.note("oracle distorted by the cubic rule (3 - 2p) p^2");
        }
        out.push_back(std::move(r));
    };

    for (const auto &[det_name, det] : standard_detector_battery(seed)) {
        std::shared_ptr<const ClickOracle> oracle = det;
        if (cubic) {
            oracle = std::make_shared<DistortedOracle>(det, [](double p) { return p3_rule(std::clamp(p, 0.0, 1.0)); });
        }
        const ClickOracle &o = *oracle;

        std::string name = "envariance/" + det_name;
        if (wanted(name)) {
            emit(verify_envariance(o, 20, derive_seed(seed, name), 4, tol), name);
        }

        name = "lemma1/" + det_name;
        if (wanted(name)) {
            Rng rng(derive_seed(seed, name));
            VerificationReport r(name, "6 instance(s), lambda in {0, 1, 4 random}", tol);
            for (int i = 0; i < 6; i++) {
                BlochVector p0 = random_ball_point(rng);
                BlochVector p1 = random_ball_point(rng);
                double lambda = i == 0 ? 0.0 : (i == 1 ? 1.0 : uniform01(rng));
                merge_report(r, verify_lemma1(o, p0, p1, lambda, tol), "i" + std::to_string(i) + "/");
            }
            emit(r.finalize(), name);
        }

        name = "lemma2/" + det_name;
        if (wanted(name)) {
            Rng rng(derive_seed(seed, name));
            BlochVector p0 = random_direction(rng);
            VerificationReport r(name, "antipodal pair and a random pair", tol);
            merge_report(r, verify_lemma2(o, p0, -p0, tol), "antipodal/");
            merge_report(r, verify_lemma2(o, random_ball_point(rng), random_ball_point(rng), tol), "random/");
            emit(r.finalize(), name);
        }

        for (int seg = 0; seg < 3; seg++) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "lemma3/%s/seg-%02d", det_name.c_str(), seg);
            name = buf;
            if (!wanted(name)) {
                continue;
            }
            Rng rng(derive_seed(seed, name));
            BlochVector p0 = random_ball_point(rng);
            BlochVector p1 = random_ball_point(rng);
            DyadicOptions dy;
            dy.depth = options.depth;
            emit(verify_lemma3_dyadic(o, p0, p1, derive_seed(seed, name + "/x"), dy, tol), name);
        }

        name = "theorem1/" + det_name;
        if (wanted(name)) {
            emit(verify_theorem1(o, 100, derive_seed(seed, name), tol), name);
        }
        name = "theorem2/" + det_name;
        if (wanted(name)) {
            emit(verify_theorem2(o, 200, derive_seed(seed, name), tol), name);
        }
    }

    bool any_identity = false;
    for (auto n : kIdentityNames) {
        any_identity = any_identity || wanted("identity/" + std::string(n));
    }
    if (any_identity) {
        BracketFn bracket = rule_bracket(cubic ? ProbabilityRule::cubic3() : ProbabilityRule::born());
        for (auto &r : run_identity_battery(bracket, derive_seed(seed, "identity"), 100, tol)) {
            if (wanted(r.name)) {
                std::string n = r.name;
                emit(std::move(r), n);
            }
        }
    }
    if (wanted("identity/bell-balance")) {
        VerificationReport r("identity/bell-balance", "(|up up> + |down down>)/sqrt 2", tol);
        const StateVector bell({2, 2}, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
        double a = sg_measure(bell, 1)[0].probability;
        if (cubic) {
            a = p3_rule(a);
        }
        r.detail("a_half", a);
        r.deviation("deviation", a - 0.5);
        emit(r.finalize(), "identity/bell-balance");
    }

    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.name < b.name; });
    return out;
}

}  // namespace bornv
