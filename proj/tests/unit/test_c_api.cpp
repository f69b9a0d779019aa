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

// Exercises the shared library through its C header only.

#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>

#include "bornverifier.h"

namespace {

const char *kSLambda =
    "wire a\nwire b\nstate S = sqrt(0.75)*|uu> + sqrt(0.25)*|dd>\nprepare S\nmeasure a SG -> up\n";

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(bv_version()) == "1.0.0");
    CHECK(std::string(bv_status_name(BV_OK)) == "ok");
    CHECK(std::string(bv_status_name(BV_ERROR_PARSE)) == "parse error");
    CHECK(std::string(bv_status_name(static_cast<bv_status>(99))) == "unknown status");
}

TEST_CASE("null arguments are rejected") {
    CHECK(bv_state_create(nullptr, 0, nullptr, 0, nullptr) == BV_ERROR_NULL_POINTER);
    CHECK(std::strlen(bv_last_error()) > 0);
    CHECK(bv_experiment_parse(nullptr, 0, nullptr, nullptr) == BV_ERROR_NULL_POINTER);
    bv_state_free(nullptr);
    bv_detector_free(nullptr);
    bv_experiment_free(nullptr);
    bv_document_free(nullptr);
    bv_text_free(nullptr);
    bv_wavefunction_free(nullptr);
    CHECK(bv_document_json(nullptr) == nullptr);
}

TEST_CASE("states and Stern-Gerlach") {
    size_t dims[] = {2, 2};
    double h = std::sqrt(0.5);
    double amps[] = {h, 0, 0, 0, 0, 0, h, 0};
    bv_state *bell = nullptr;
    REQUIRE(bv_state_create(dims, 2, amps, 4, &bell) == BV_OK);
    double up = 0, down = 0;
    REQUIRE(bv_sg_measure(bell, 0, &up, &down) == BV_OK);
    CHECK(std::abs(up - 0.5) < 1e-12);
    CHECK(std::abs(down - 0.5) < 1e-12);
    double c1 = 0, c2 = 0;
    REQUIRE(bv_state_schmidt(bell, &c1, &c2) == BV_OK);
    CHECK(std::abs(c1 - h) < 1e-12);
    double p[3];
    REQUIRE(bv_state_bloch(bell, 0, p) == BV_OK);
    CHECK(std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) < 1e-12);
    double rho[8];
    REQUIRE(bv_state_reduced_density(bell, 1, rho) == BV_OK);
    CHECK(std::abs(rho[0] - 0.5) < 1e-12);
    size_t n = 0;
    REQUIRE(bv_state_dimension(bell, &n) == BV_OK);
    CHECK(n == 4);
    double out[8];
    CHECK(bv_state_amplitudes(bell, out, 4) == BV_ERROR_LIMIT);
    REQUIRE(bv_state_amplitudes(bell, out, 8) == BV_OK);
    CHECK(out[6] == h);
    CHECK(bv_sg_measure(bell, 4, &up, &down) == BV_ERROR_NOT_FOUND);
    bv_state_free(bell);

    double bad[] = {1, 0, 1, 0};
    size_t one[] = {2};
    bv_state *s = nullptr;
    CHECK(bv_state_create(one, 1, bad, 2, &s) == BV_ERROR_INVALID_ARGUMENT);
    CHECK(s == nullptr);
    size_t huge[] = {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
    CHECK(bv_state_random(huge, 11, 1, &s) == BV_ERROR_LIMIT);
}

TEST_CASE("detectors and tomography") {
    bv_detector *z = nullptr;
    REQUIRE(bv_detector_projective(0, 0, 1, &z) == BV_OK);
    double alpha[3], beta = 0;
    REQUIRE(bv_detector_tomography(z, alpha, &beta) == BV_OK);
    CHECK(std::abs(alpha[2] - 0.5) < 1e-12);
    CHECK(std::abs(beta - 0.5) < 1e-12);
    double m[8];
    REQUIRE(bv_detector_povm(z, 1e-9, m) == BV_OK);
    CHECK(std::abs(m[0] - 1) < 1e-12);
    double p[3] = {0, 0, -1};
    double f = 1;
    REQUIRE(bv_detector_probe(z, p, &f) == BV_OK);
    CHECK(std::abs(f) < 1e-12);
    bv_detector *bad = nullptr;
    CHECK(bv_detector_projective(0, 0, 2, &bad) == BV_ERROR_INVALID_ARGUMENT);

    double effect[] = {0.9, 0, 0, 0, 0, 0, 0.1, 0};
    bv_detector *noisy = nullptr;
    REQUIRE(bv_detector_effect(effect, &noisy) == BV_OK);
    size_t dims[] = {2, 3};
    bv_state *psi = nullptr;
    REQUIRE(bv_state_random(dims, 2, 5, &psi) == BV_OK);
    double click = 0, bloch[3];
    REQUIRE(bv_detector_click_probability(noisy, psi, 0, &click) == BV_OK);
    REQUIRE(bv_state_bloch(psi, 0, bloch) == BV_OK);
    CHECK(std::abs(click - (0.5 + 0.4 * bloch[2])) < 1e-12);
    CHECK(bv_detector_click_probability(noisy, psi, 1, &click) == BV_ERROR_INVALID_ARGUMENT);

    double coupling[32] = {0};
    for (int k : {0, 1}) {
        coupling[2 * (k * 4 + k)] = 1;
    }
    coupling[2 * (2 * 4 + 3)] = 1;
    coupling[2 * (3 * 4 + 2)] = 1;
    double proj[8] = {0, 0, 0, 0, 0, 0, 1, 0};
    bv_detector *anc = nullptr;
    REQUIRE(bv_detector_ancilla(2, coupling, proj, &anc) == BV_OK);
    REQUIRE(bv_detector_tomography(anc, alpha, &beta) == BV_OK);
    CHECK(std::abs(alpha[2] + 0.5) < 1e-12);

    bv_detector *rnd = nullptr;
    REQUIRE(bv_detector_random(3, &rnd) == BV_OK);
    bv_document *doc = nullptr;
    REQUIRE(bv_run_tomography(rnd, "r", 1, 1e-9, &doc) == BV_OK);
    CHECK(bv_document_passed(doc) == 1);
    CHECK(std::string(bv_document_json(doc)).find("\"detector\": \"r\"") != std::string::npos);
    bv_document_free(doc);

    for (auto *d : {z, noisy, anc, rnd}) {
        bv_detector_free(d);
    }
    bv_state_free(psi);
}

TEST_CASE("experiments") {
    bv_experiment *exp = nullptr;
    REQUIRE(bv_experiment_parse(kSLambda, std::strlen(kSLambda), &exp, nullptr) == BV_OK);
    double p = 0;
    int undefined = -1;
    REQUIRE(bv_experiment_evaluate(exp, "default", &p, &undefined) == BV_OK);
    CHECK(std::abs(p - 0.75) < 1e-12);
    CHECK(undefined == 0);
    CHECK(bv_experiment_evaluate(exp, "nope", &p, nullptr) == BV_ERROR_NOT_FOUND);
    size_t n = 0;
    REQUIRE(bv_experiment_query_count(exp, &n) == BV_OK);
    CHECK(n == 1);
    const char *name = nullptr;
    REQUIRE(bv_experiment_query_name(exp, 0, &name) == BV_OK);
    CHECK(std::string(name) == "default");
    CHECK(bv_experiment_query_name(exp, 1, &name) == BV_ERROR_NOT_FOUND);

    bv_text *text = nullptr;
    REQUIRE(bv_experiment_print(exp, &text) == BV_OK);
    bv_experiment *again = nullptr;
    std::string printed = bv_text_data(text);
    REQUIRE(bv_experiment_parse(printed.data(), printed.size(), &again, nullptr) == BV_OK);
    int equal = 0;
    REQUIRE(bv_experiment_equal(exp, again, &equal) == BV_OK);
    CHECK(equal == 1);
    bv_text_free(text);
    bv_experiment_free(again);

    bv_detector *det = nullptr;
    CHECK(bv_experiment_detector(exp, nullptr, &det) == BV_ERROR_NOT_FOUND);
    bv_experiment_free(exp);

    const char *with_det = "wire s\ndetector D = effect [[0.25, 0], [0, 0.75]]\n";
    REQUIRE(bv_experiment_parse(with_det, std::strlen(with_det), &exp, nullptr) == BV_OK);
    REQUIRE(bv_experiment_detector_count(exp, &n) == BV_OK);
    CHECK(n == 1);
    REQUIRE(bv_experiment_detector_name(exp, 0, &name) == BV_OK);
    CHECK(std::string(name) == "D");
    REQUIRE(bv_experiment_detector(exp, "D", &det) == BV_OK);
    double alpha[3], beta;
    REQUIRE(bv_detector_tomography(det, alpha, &beta) == BV_OK);
    CHECK(std::abs(alpha[2] + 0.25) < 1e-12);
    bv_detector_free(det);
    bv_experiment_free(exp);
}

TEST_CASE("parse errors report a position") {
    const char *src = "wire w0\nprepare |u>\ngate X on w9\n";
    bv_experiment *exp = nullptr;
    bv_parse_error pos{0, 0};
    CHECK(bv_experiment_parse(src, std::strlen(src), &exp, &pos) == BV_ERROR_PARSE);
    CHECK(exp == nullptr);
    CHECK(pos.line == 3);
    CHECK(pos.column == 11);
    CHECK(std::string(bv_last_error()).find("undeclared wire") != std::string::npos);
}

TEST_CASE("rules and wavefunctions") {
    double v = 0;
    REQUIRE(bv_p3_rule(0.6, &v) == BV_OK);
    CHECK(std::abs(v - 0.648) < 1e-12);
    REQUIRE(bv_p1_rule(0.6, 0.7, &v) == BV_OK);
    CHECK(v == 0);

    bv_wavefunction *wf = nullptr;
    REQUIRE(bv_wavefunction_gaussian(0, 1, -10, 10, 100000, &wf) == BV_OK);
    double p = 0, c0 = 0, c1 = 0;
    REQUIRE(bv_born_integral(wf, -1, 1, &p) == BV_OK);
    CHECK(std::abs(p - std::erf(1 / std::sqrt(2.0))) < 1e-4);
    REQUIRE(bv_decompose_interval(wf, -1, 1, &c0, &c1) == BV_OK);
    CHECK(c1 * c1 == p);
    bv_document *doc = nullptr;
    REQUIRE(bv_run_born_integral(wf, -1, 1, 1e-9, &doc) == BV_OK);
    CHECK(bv_document_passed(doc) == 1);
    bv_document_free(doc);
    CHECK(bv_born_integral(wf, 1, -1, &p) == BV_ERROR_INVALID_ARGUMENT);
    bv_wavefunction_free(wf);

    const char *table = "0 1\n1 1\n2 1\n3 1\n";
    REQUIRE(bv_wavefunction_read(table, std::strlen(table), &wf) == BV_OK);
    REQUIRE(bv_born_integral(wf, 0, 1.5, &p) == BV_OK);
    CHECK(std::abs(p - 0.5) < 1e-12);
    bv_wavefunction_free(wf);
    CHECK(bv_wavefunction_read("x", 1, &wf) == BV_ERROR_INVALID_ARGUMENT);
    CHECK(bv_wavefunction_uniform(0, 1, 1, &wf) == BV_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("report documents") {
    bv_verify_options o = bv_verify_options_default();
    CHECK(o.seed == 42);
    CHECK(o.tolerance == 1e-9);
    o.subset = "identity/bell";
    bv_document *a = nullptr, *b = nullptr;
    REQUIRE(bv_run_verify(&o, &a) == BV_OK);
    REQUIRE(bv_run_verify(&o, &b) == BV_OK);
    CHECK(std::string(bv_document_json(a)) == bv_document_json(b));
    CHECK(bv_document_passed(a) == 1);
    CHECK(std::string(bv_document_csv(a)).rfind("name,", 0) == 0);
    bv_document_free(a);
    bv_document_free(b);
    o.tolerance = -1;
    CHECK(bv_run_verify(&o, &a) == BV_ERROR_INVALID_ARGUMENT);

    bv_document *doc = nullptr;
    REQUIRE(bv_run_counterexamples("cubic3", 42, nullptr, 50, 1e-9, &doc) == BV_OK);
    CHECK(bv_document_passed(doc) == 0);
    bv_document_free(doc);
    CHECK(bv_run_counterexamples("modified2", 42, nullptr, 50, 1e-9, &doc) == BV_ERROR_INVALID_ARGUMENT);
    double metric[] = {2, 0, 0, 0, 0, 0, 2.0 / 3, 0};
    REQUIRE(bv_run_counterexamples("modified2", 42, metric, 50, 1e-9, &doc) == BV_OK);
    bv_document_free(doc);
    CHECK(bv_run_counterexamples("quartic", 42, nullptr, 50, 1e-9, &doc) == BV_ERROR_INVALID_ARGUMENT);
}
