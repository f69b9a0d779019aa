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

#include "bornverifier.h"

#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "bornverifier/documents.hpp"
#include "bornverifier/dsl.hpp"

struct bv_state {
    bornv::StateVector value;
};
struct bv_detector {
    bornv::Detector value;
};
struct bv_experiment {
    bornv::dsl::ExperimentSpec value;
};
struct bv_wavefunction {
    bornv::Wavefunction1D value;
};
struct bv_text {
    std::string value;
};
struct bv_document {
    bornv::Document value;
};

namespace {

thread_local std::string g_last_error;

bv_status fail(bv_status s, const std::string &msg) {
    g_last_error = msg;
    return s;
}

// Maps exceptions thrown by `body` onto status codes.
template <typename F>
bv_status guarded(F &&body) {
    try {
        body();
        g_last_error.clear();
        return BV_OK;
    } catch (const bornv::dsl::ParseError &e) {
        return fail(BV_ERROR_PARSE, e.what());
    } catch (const std::out_of_range &e) {
        return fail(BV_ERROR_NOT_FOUND, e.what());
    } catch (const std::length_error &e) {
        return fail(BV_ERROR_LIMIT, e.what());
    } catch (const std::domain_error &e) {
        return fail(BV_ERROR_NUMERIC, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(BV_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(BV_ERROR_LIMIT, "out of memory");
    } catch (const std::exception &e) {
        return fail(BV_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(BV_ERROR_INTERNAL, "unknown error");
    }
}

template <typename... P>
bool any_null(P... p) {
    return ((p == nullptr) || ...);
}

#define BV_REQUIRE(...)                                                     \
    do {                                                                    \
        if (any_null(__VA_ARGS__)) {                                        \
            return fail(BV_ERROR_NULL_POINTER, "null pointer argument");    \
        }                                                                   \
    } while (0)

std::vector<bornv::Complex> complex_span(const double *v, std::size_t n) {
    std::vector<bornv::Complex> out(n);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = {v[2 * k], v[2 * k + 1]};
    }
    return out;
}

bornv::ComplexMatrix square_matrix(const double *v, std::size_t dim) {
    return bornv::ComplexMatrix(dim, dim, complex_span(v, dim * dim));
}

void write_matrix2(const bornv::ComplexMatrix &m, double out[8]) {
    for (std::size_t k = 0; k < 4; k++) {
        out[2 * k] = m.entries()[k].real();
        out[2 * k + 1] = m.entries()[k].imag();
    }
}

template <typename T, typename V>
T *make(V &&v) {
    return new T{std::forward<V>(v)};
}

}  // namespace

extern "C" {

const char *bv_version(void) {
    return bornv::kToolVersion;
}

const char *bv_status_name(bv_status status) {
    switch (status) {
        case BV_OK:
            return "ok";
        case BV_ERROR_INVALID_ARGUMENT:
            return "invalid argument";
        case BV_ERROR_PARSE:
            return "parse error";
        case BV_ERROR_NOT_FOUND:
            return "not found";
        case BV_ERROR_NUMERIC:
            return "numeric error";
        case BV_ERROR_LIMIT:
            return "limit exceeded";
        case BV_ERROR_NULL_POINTER:
            return "null pointer";
        case BV_ERROR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char *bv_last_error(void) {
    return g_last_error.c_str();
}

const char *bv_text_data(const bv_text *text) {
    return text ? text->value.c_str() : nullptr;
}

void bv_text_free(bv_text *text) {
    delete text;
}

const char *bv_document_json(const bv_document *doc) {
    return doc ? doc->value.json.c_str() : nullptr;
}

const char *bv_document_csv(const bv_document *doc) {
    return doc ? doc->value.csv.c_str() : nullptr;
}

int bv_document_passed(const bv_document *doc) {
    return doc && doc->value.passed ? 1 : 0;
}

void bv_document_free(bv_document *doc) {
    delete doc;
}

bv_status bv_state_create(const size_t *dims, size_t n_dims, const double *amplitudes, size_t n_amplitudes,
                          bv_state **out) {
    BV_REQUIRE(dims, amplitudes, out);
    return guarded([&] {
        std::vector<std::size_t> d(dims, dims + n_dims);
        *out = make<bv_state>(bornv::StateVector(std::move(d), complex_span(amplitudes, n_amplitudes)));
    });
}

bv_status bv_state_random(const size_t *dims, size_t n_dims, uint64_t seed, bv_state **out) {
    BV_REQUIRE(dims, out);
    return guarded([&] {
        *out = make<bv_state>(bornv::random_state(std::vector<std::size_t>(dims, dims + n_dims), seed));
    });
}

void bv_state_free(bv_state *state) {
    delete state;
}

bv_status bv_state_dimension(const bv_state *state, size_t *out) {
    BV_REQUIRE(state, out);
    *out = state->value.total_dim();
    return BV_OK;
}

bv_status bv_state_amplitudes(const bv_state *state, double *out, size_t capacity) {
    BV_REQUIRE(state, out);
    if (capacity < 2 * state->value.total_dim()) {
        return fail(BV_ERROR_LIMIT, "output buffer too small");
    }
    for (std::size_t k = 0; k < state->value.total_dim(); k++) {
        out[2 * k] = state->value[k].real();
        out[2 * k + 1] = state->value[k].imag();
    }
    return BV_OK;
}

bv_status bv_state_bloch(const bv_state *state, size_t spin_factor, double out[3]) {
    BV_REQUIRE(state, out);
    return guarded([&] {
        auto p = bornv::bloch_polarization(state->value, spin_factor);
        out[0] = p.x;
        out[1] = p.y;
        out[2] = p.z;
    });
}

bv_status bv_state_reduced_density(const bv_state *state, size_t spin_factor, double out[8]) {
    BV_REQUIRE(state, out);
    return guarded([&] { write_matrix2(bornv::reduced_density(state->value, spin_factor).matrix(), out); });
}

bv_status bv_state_schmidt(const bv_state *state, double *c1, double *c2) {
    BV_REQUIRE(state, c1, c2);
    return guarded([&] {
        auto s = bornv::schmidt_decompose(state->value);
        *c1 = s.c1;
        *c2 = s.c2;
    });
}

bv_status bv_sg_measure(const bv_state *state, size_t wire, double *p_up, double *p_down) {
    BV_REQUIRE(state, p_up, p_down);
    return guarded([&] {
        auto r = bornv::sg_measure(state->value, wire);
        *p_up = r[0].probability;
        *p_down = r[1].probability;
    });
}

bv_status bv_detector_effect(const double m[8], bv_detector **out) {
    BV_REQUIRE(m, out);
    return guarded([&] { *out = make<bv_detector>(bornv::Detector::effect(square_matrix(m, 2))); });
}

bv_status bv_detector_projective(double x, double y, double z, bv_detector **out) {
    BV_REQUIRE(out);
    return guarded([&] {
        bornv::BlochVector n{x, y, z};
        if (std::abs(n.norm() - 1) > bornv::kDefaultTolerance) {
            throw std::invalid_argument("Projective direction must be a unit vector.");
        }
        *out = make<bv_detector>(bornv::Detector::projective(n));
    });
}

bv_status bv_detector_ancilla(size_t ancilla_dim, const double *coupling, const double *projector,
                              bv_detector **out) {
    BV_REQUIRE(coupling, projector, out);
    return guarded([&] {
        if (ancilla_dim < 2 || ancilla_dim > 64) {
            throw std::invalid_argument("Ancilla dimension must be between 2 and 64.");
        }
        *out = make<bv_detector>(bornv::Detector::ancilla(ancilla_dim, square_matrix(coupling, 2 * ancilla_dim),
                                                          square_matrix(projector, ancilla_dim)));
    });
}

bv_status bv_detector_random(uint64_t seed, bv_detector **out) {
    BV_REQUIRE(out);
    return guarded([&] {
        bornv::Rng rng(seed);
        *out = make<bv_detector>(bornv::random_detector(rng));
    });
}

void bv_detector_free(bv_detector *det) {
    delete det;
}

bv_status bv_detector_click_probability(const bv_detector *det, const bv_state *state, size_t spin_factor,
                                        double *out) {
    BV_REQUIRE(det, state, out);
    return guarded([&] { *out = det->value.click_probability(state->value, spin_factor); });
}

bv_status bv_detector_probe(const bv_detector *det, const double p[3], double *out) {
    BV_REQUIRE(det, p, out);
    return guarded([&] { *out = bornv::probe_fclick(det->value, {p[0], p[1], p[2]}); });
}

bv_status bv_detector_tomography(const bv_detector *det, double alpha[3], double *beta) {
    BV_REQUIRE(det, alpha, beta);
    return guarded([&] {
        auto r = bornv::extract_affine(det->value);
        alpha[0] = r.alpha.x;
        alpha[1] = r.alpha.y;
        alpha[2] = r.alpha.z;
        *beta = r.beta;
    });
}

bv_status bv_detector_povm(const bv_detector *det, double tolerance, double out[8]) {
    BV_REQUIRE(det, out);
    return guarded([&] { write_matrix2(bornv::to_povm(bornv::extract_affine(det->value), tolerance).m, out); });
}

bv_status bv_experiment_parse(const char *source, size_t length, bv_experiment **out, bv_parse_error *error) {
    BV_REQUIRE(source, out);
    try {
        *out = make<bv_experiment>(bornv::dsl::parse(std::string_view(source, length)));
        g_last_error.clear();
        return BV_OK;
    } catch (const bornv::dsl::ParseError &e) {
        if (error) {
            error->line = e.line();
            error->column = e.column();
        }
        return fail(BV_ERROR_PARSE, e.what());
    } catch (...) {
        return guarded([] { throw; });
    }
}

void bv_experiment_free(bv_experiment *exp) {
    delete exp;
}

bv_status bv_experiment_print(const bv_experiment *exp, bv_text **out) {
    BV_REQUIRE(exp, out);
    return guarded([&] { *out = make<bv_text>(bornv::dsl::print(exp->value)); });
}

bv_status bv_experiment_equal(const bv_experiment *a, const bv_experiment *b, int *out) {
    BV_REQUIRE(a, b, out);
    *out = a->value == b->value ? 1 : 0;
    return BV_OK;
}

bv_status bv_experiment_query_count(const bv_experiment *exp, size_t *out) {
    BV_REQUIRE(exp, out);
    *out = exp->value.queries.size();
    return BV_OK;
}

bv_status bv_experiment_query_name(const bv_experiment *exp, size_t index, const char **out) {
    BV_REQUIRE(exp, out);
    if (index >= exp->value.queries.size()) {
        return fail(BV_ERROR_NOT_FOUND, "query index out of range");
    }
    *out = exp->value.queries[index].name.c_str();
    return BV_OK;
}

bv_status bv_experiment_evaluate(const bv_experiment *exp, const char *query, double *probability,
                                 int *conditional_undefined) {
    BV_REQUIRE(exp, query, probability);
    return guarded([&] {
        auto r = exp->value.evaluate(query);
        *probability = r.probability;
        if (conditional_undefined) {
            *conditional_undefined = r.conditional_undefined ? 1 : 0;
        }
    });
}

bv_status bv_experiment_detector_count(const bv_experiment *exp, size_t *out) {
    BV_REQUIRE(exp, out);
    *out = exp->value.detectors.size();
    return BV_OK;
}

bv_status bv_experiment_detector_name(const bv_experiment *exp, size_t index, const char **out) {
    BV_REQUIRE(exp, out);
    if (index >= exp->value.detectors.size()) {
        return fail(BV_ERROR_NOT_FOUND, "detector index out of range");
    }
    *out = exp->value.detectors[index].name.c_str();
    return BV_OK;
}

bv_status bv_experiment_detector(const bv_experiment *exp, const char *name, bv_detector **out) {
    BV_REQUIRE(exp, out);
    return guarded([&] {
        const auto &ds = exp->value.detectors;
        const bornv::dsl::DetectorDecl *d = name ? exp->value.find_detector(name) : (ds.empty() ? nullptr : &ds[0]);
        if (!d) {
            throw std::out_of_range(name ? "No detector named '" + std::string(name) + "'." : "No detector declared.");
        }
        *out = make<bv_detector>(bornv::dsl::build_detector(d->spec));
    });
}

bv_status bv_p1_rule(double p0, double x, double *out) {
    BV_REQUIRE(out);
    return guarded([&] { *out = bornv::p1_rule(p0, x); });
}

bv_status bv_p3_rule(double p0, double *out) {
    BV_REQUIRE(out);
    return guarded([&] { *out = bornv::p3_rule(p0); });
}

bv_status bv_wavefunction_uniform(double x_min, double x_max, size_t n, bv_wavefunction **out) {
    BV_REQUIRE(out);
    return guarded([&] { *out = make<bv_wavefunction>(bornv::Wavefunction1D::uniform(x_min, x_max, n)); });
}

bv_status bv_wavefunction_gaussian(double mu, double sigma, double x_min, double x_max, size_t n,
                                   bv_wavefunction **out) {
    BV_REQUIRE(out);
    return guarded([&] {
        if (n > 100000000) {
            throw std::length_error("Grid too large.");
        }
        *out = make<bv_wavefunction>(bornv::Wavefunction1D::gaussian(mu, sigma, x_min, x_max, n));
    });
}

bv_status bv_wavefunction_read(const char *text, size_t length, bv_wavefunction **out) {
    BV_REQUIRE(text, out);
    return guarded([&] {
        std::istringstream in{std::string(text, length)};
        *out = make<bv_wavefunction>(bornv::Wavefunction1D::read(in));
    });
}

void bv_wavefunction_free(bv_wavefunction *wf) {
    delete wf;
}

bv_status bv_born_integral(const bv_wavefunction *wf, double x1, double x2, double *out) {
    BV_REQUIRE(wf, out);
    return guarded([&] { *out = bornv::born_integral(wf->value, bornv::IntervalDetector(x1, x2)); });
}

bv_status bv_decompose_interval(const bv_wavefunction *wf, double x1, double x2, double *c0, double *c1) {
    BV_REQUIRE(wf, c0, c1);
    return guarded([&] {
        auto d = bornv::decompose_interval(wf->value, bornv::IntervalDetector(x1, x2));
        *c0 = d.c0;
        *c1 = d.c1;
    });
}

bv_verify_options bv_verify_options_default(void) {
    return bv_verify_options{42, bornv::kDefaultTolerance, nullptr, 20, 0};
}

bv_status bv_run_verify(const bv_verify_options *options, bv_document **out) {
    BV_REQUIRE(options, out);
    return guarded([&] {
        if (!(options->tolerance >= 0)) {
            throw std::invalid_argument("Tolerance must be non-negative.");
        }
        bornv::SuiteOptions o;
        o.subset = options->subset ? options->subset : "";
        o.depth = options->depth;
        o.inject = options->inject_cubic3 ? bornv::Injection::Cubic3 : bornv::Injection::None;
        *out = make<bv_document>(bornv::verify_document(options->seed, options->tolerance, o));
    });
}

bv_status bv_run_counterexamples(const char *rule, uint64_t seed, const double *metric, size_t instances,
                                 double tolerance, bv_document **out) {
    BV_REQUIRE(rule, out);
    return guarded([&] {
        auto kind = bornv::parse_rule(rule);
        if (!kind) {
            throw std::invalid_argument("Unknown rule '" + std::string(rule) + "'.");
        }
        if (!(tolerance >= 0)) {
            throw std::invalid_argument("Tolerance must be non-negative.");
        }
        bornv::ProbabilityRule r;
        switch (*kind) {
            case bornv::RuleKind::Born:
                r = bornv::ProbabilityRule::born();
                break;
            case bornv::RuleKind::Cubic3:
                r = bornv::ProbabilityRule::cubic3();
                break;
            case bornv::RuleKind::Random1:
                r = bornv::ProbabilityRule::random1(bornv::derive_seed(seed, "x-stream"));
                break;
            case bornv::RuleKind::Modified2:
                if (!metric) {
                    throw std::invalid_argument("The modified2 rule needs a metric operator.");
                }
                r = bornv::ProbabilityRule::modified2(square_matrix(metric, 2));
                break;
        }
        *out = make<bv_document>(bornv::counterexample_document(r, seed, instances, tolerance));
    });
}

bv_status bv_run_tomography(const bv_detector *det, const char *name, uint64_t seed, double tolerance,
                            bv_document **out) {
    BV_REQUIRE(det, out);
    return guarded([&] {
        *out = make<bv_document>(bornv::tomography_document(det->value, name ? name : "detector", seed, tolerance));
    });
}

bv_status bv_run_born_integral(const bv_wavefunction *wf, double x1, double x2, double tolerance,
                               bv_document **out) {
    BV_REQUIRE(wf, out);
    return guarded([&] {
        *out = make<bv_document>(
            bornv::born_integral_document(wf->value, bornv::IntervalDetector(x1, x2), tolerance));
    });
}

}  // extern "C"
