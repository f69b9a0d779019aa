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

#ifndef BORNVERIFIER_H
#define BORNVERIFIER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BORNVERIFIER_BUILDING)
#define BV_API __declspec(dllexport)
#else
#define BV_API __declspec(dllimport)
#endif
#else
#define BV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; on failure bv_last_error() holds a message
 * (per thread) and output arguments are left untouched. Complex numbers are
 * passed as interleaved (re, im) doubles; matrices are row-major. */
typedef enum bv_status {
    BV_OK = 0,
    BV_ERROR_INVALID_ARGUMENT = 1,
    BV_ERROR_PARSE = 2,
    BV_ERROR_NOT_FOUND = 3,
    BV_ERROR_NUMERIC = 4,
    BV_ERROR_LIMIT = 5,
    BV_ERROR_NULL_POINTER = 6,
    BV_ERROR_INTERNAL = 7
} bv_status;

typedef struct bv_state bv_state;
typedef struct bv_detector bv_detector;
typedef struct bv_experiment bv_experiment;
typedef struct bv_wavefunction bv_wavefunction;
typedef struct bv_text bv_text;
typedef struct bv_document bv_document;

BV_API const char *bv_version(void);
BV_API const char *bv_status_name(bv_status status);
BV_API const char *bv_last_error(void);

/* Text and report handles */
BV_API const char *bv_text_data(const bv_text *text);
BV_API void bv_text_free(bv_text *text);
BV_API const char *bv_document_json(const bv_document *doc);
BV_API const char *bv_document_csv(const bv_document *doc);
BV_API int bv_document_passed(const bv_document *doc);
BV_API void bv_document_free(bv_document *doc);

/* States over a tensor product; big-endian, spin basis (up, down). */
BV_API bv_status bv_state_create(const size_t *dims, size_t n_dims, const double *amplitudes, size_t n_amplitudes,
                                 bv_state **out);
BV_API bv_status bv_state_random(const size_t *dims, size_t n_dims, uint64_t seed, bv_state **out);
BV_API void bv_state_free(bv_state *state);
BV_API bv_status bv_state_dimension(const bv_state *state, size_t *out);
/* Writes 2 * dimension doubles. */
BV_API bv_status bv_state_amplitudes(const bv_state *state, double *out, size_t capacity);
BV_API bv_status bv_state_bloch(const bv_state *state, size_t spin_factor, double out[3]);
BV_API bv_status bv_state_reduced_density(const bv_state *state, size_t spin_factor, double out[8]);
BV_API bv_status bv_state_schmidt(const bv_state *state, double *c1, double *c2);
BV_API bv_status bv_sg_measure(const bv_state *state, size_t wire, double *p_up, double *p_down);

/* Black-box detectors */
BV_API bv_status bv_detector_effect(const double m[8], bv_detector **out);
BV_API bv_status bv_detector_projective(double x, double y, double z, bv_detector **out);
BV_API bv_status bv_detector_ancilla(size_t ancilla_dim, const double *coupling, const double *projector,
                                     bv_detector **out);
BV_API bv_status bv_detector_random(uint64_t seed, bv_detector **out);
BV_API void bv_detector_free(bv_detector *det);
BV_API bv_status bv_detector_click_probability(const bv_detector *det, const bv_state *state, size_t spin_factor,
                                               double *out);
BV_API bv_status bv_detector_probe(const bv_detector *det, const double p[3], double *out);
BV_API bv_status bv_detector_tomography(const bv_detector *det, double alpha[3], double *beta);
BV_API bv_status bv_detector_povm(const bv_detector *det, double tolerance, double out[8]);

/* Experiment text (.qexp) */
typedef struct bv_parse_error {
    size_t line;
    size_t column;
} bv_parse_error;

/* `error` may be NULL; it is filled on BV_ERROR_PARSE. */
BV_API bv_status bv_experiment_parse(const char *source, size_t length, bv_experiment **out, bv_parse_error *error);
BV_API void bv_experiment_free(bv_experiment *exp);
BV_API bv_status bv_experiment_print(const bv_experiment *exp, bv_text **out);
BV_API bv_status bv_experiment_equal(const bv_experiment *a, const bv_experiment *b, int *out);
BV_API bv_status bv_experiment_query_count(const bv_experiment *exp, size_t *out);
/* The name stays valid while `exp` lives. */
BV_API bv_status bv_experiment_query_name(const bv_experiment *exp, size_t index, const char **out);
BV_API bv_status bv_experiment_evaluate(const bv_experiment *exp, const char *query, double *probability,
                                        int *conditional_undefined);
BV_API bv_status bv_experiment_detector_count(const bv_experiment *exp, size_t *out);
BV_API bv_status bv_experiment_detector_name(const bv_experiment *exp, size_t index, const char **out);
/* `name` NULL selects the first declared detector. */
BV_API bv_status bv_experiment_detector(const bv_experiment *exp, const char *name, bv_detector **out);

/* Probability rules */
BV_API bv_status bv_p1_rule(double p0, double x, double *out);
BV_API bv_status bv_p3_rule(double p0, double *out);

/* One-dimensional wavefunctions and interval detectors */
BV_API bv_status bv_wavefunction_uniform(double x_min, double x_max, size_t n, bv_wavefunction **out);
BV_API bv_status bv_wavefunction_gaussian(double mu, double sigma, double x_min, double x_max, size_t n,
                                          bv_wavefunction **out);
/* Rows "x re" or "x re im". */
BV_API bv_status bv_wavefunction_read(const char *text, size_t length, bv_wavefunction **out);
BV_API void bv_wavefunction_free(bv_wavefunction *wf);
BV_API bv_status bv_born_integral(const bv_wavefunction *wf, double x1, double x2, double *out);
BV_API bv_status bv_decompose_interval(const bv_wavefunction *wf, double x1, double x2, double *c0, double *c1);

/* Report documents */
typedef struct bv_verify_options {
    uint64_t seed;
    double tolerance;
    const char *subset; /* comma-separated report-name prefixes, NULL or "" for all */
    int depth;
    int inject_cubic3;
} bv_verify_options;

BV_API bv_verify_options bv_verify_options_default(void);
BV_API bv_status bv_run_verify(const bv_verify_options *options, bv_document **out);
/* rule: born, random1, modified2, cubic3. `metric` (8 doubles) is required for modified2. */
BV_API bv_status bv_run_counterexamples(const char *rule, uint64_t seed, const double *metric, size_t instances,
                                        double tolerance, bv_document **out);
BV_API bv_status bv_run_tomography(const bv_detector *det, const char *name, uint64_t seed, double tolerance,
                                   bv_document **out);
BV_API bv_status bv_run_born_integral(const bv_wavefunction *wf, double x1, double x2, double tolerance,
                                      bv_document **out);

#ifdef __cplusplus
}
#endif

#endif
