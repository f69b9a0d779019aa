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

#include "bornverifier/documents.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "json.hpp"

namespace bornv {

namespace {

using nlohmann::json;

std::string number_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Non-finite doubles have no JSON spelling; they are written as null.
void dump(const json &j, std::string &out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner_pad = pad + "  ";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                out += first ? "" : ",\n";
                first = false;
                out += inner_pad + json(it.key()).dump() + ": ";
                dump(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < j.size(); k++) {
                out += k ? ",\n" : "";
                out += inner_pad;
                dump(j[k], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            out += std::isfinite(v) ? number_text(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

std::string canonical(const json &j) {
    std::string out;
    dump(j, out, 0);
    return out + "\n";
}

json report_json(const VerificationReport &r) {
    json details = json::object();
    for (const auto &[k, v] : r.details) {
        std::string key = k;
        for (int n = 2; details.contains(key); n++) {
            key = k + "#" + std::to_string(n);
        }
        details[key] = v;
    }
    json j{
        {"name", r.name},
        {"inputs", r.inputs},
        {"max_deviation", r.max_deviation},
        {"tolerance", r.tolerance},
        {"passed", r.passed},
        {"details", details},
        {"notes", r.notes},
    };
    if (r.dyadic) {
        json samples = json::array();
        for (const auto &s : r.dyadic->samples) {
            samples.push_back({{"x", s.x}, {"f", s.f}, {"bound", s.bound}});
        }
        j["dyadic"] = {{"depth", r.dyadic->depth}, {"samples", samples}};
    }
    return j;
}

json header(const std::string &command, std::uint64_t seed, double tol) {
    return {
        {"tool", "bornverifier"},
        {"version", kToolVersion},
        {"command", command},
        {"seed", seed},
        {"tolerance", tol},
    };
}

json reports_json(const std::vector<VerificationReport> &reports, bool &passed) {
    json arr = json::array();
    for (const auto &r : reports) {
        passed = passed && r.passed;
        arr.push_back(report_json(r));
    }
    return arr;
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json matrix_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            row.push_back(complex_json(m(r, c)));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string csv_summary(const std::vector<VerificationReport> &reports) {
    std::string out = "name,passed,max_deviation,tolerance\n";
    for (const auto &r : reports) {
        out += r.name + "," + (r.passed ? "true" : "false") + "," + number_text(r.max_deviation) + "," +
               number_text(r.tolerance) + "\n";
    }
    return out;
}

Document verify_document(std::uint64_t seed, double tol, const SuiteOptions &options) {
    auto reports = run_full_suite(seed, tol, options);
    Document d;
    json j = header("verify", seed, tol);
    j["subset"] = options.subset;
    j["depth"] = options.depth;
    j["inject"] = options.inject == Injection::Cubic3 ? "cubic3" : "none";
    j["reports"] = reports_json(reports, d.passed);
    j["passed"] = d.passed;
    d.json = canonical(j);
    d.csv = csv_summary(reports);
    return d;
}

Document counterexample_document(const ProbabilityRule &rule, std::uint64_t seed, std::size_t instances, double tol) {
    BatteryResult b = run_battery(rule, seed, instances, tol);
    Document d;
    json j = header("counterexamples", seed, tol);
    json status = json::object();
    for (const auto &[k, v] : b.status) {
        status[k] = status_name(v);
    }
    json battery{
        {"rule", b.rule},
        {"status", status},
        {"born_deviation", b.born_deviation},
        {"notes", b.notes},
        {"instances", instances},
    };
    if (rule.kind == RuleKind::Modified2) {
        battery["metric"] = matrix_json(rule.a);
    }
    if (rule.kind == RuleKind::Random1) {
        battery["x_seed"] = rule.x_seed;
    }
    j["battery"] = battery;
    j["reports"] = reports_json(b.reports, d.passed);
    j["passed"] = d.passed;
    d.json = canonical(j);
    d.csv = csv_summary(b.reports);
    return d;
}

Document tomography_document(const Detector &det, const std::string &name, std::uint64_t seed, double tol) {
    Document d;
    json j = header("tomography", seed, tol);
    AffineResponse resp = extract_affine(det);
    j["detector"] = name;
    j["affine"] = {{"alpha", json::array({resp.alpha.x, resp.alpha.y, resp.alpha.z})}, {"beta", resp.beta}};
    std::vector<VerificationReport> reports;
    try {
        j["povm"] = matrix_json(to_povm(resp, tol).m);
    } catch (const NonPhysicalResponse &e) {
        j["povm"] = nullptr;
        VerificationReport r("tomography/povm", name, tol);
        r.note(e.what());
        r.deviation("positivity_violation", std::numeric_limits<double>::infinity());
        reports.push_back(r.finalize());
    }
    auto t1 = verify_theorem1(det, 200, derive_seed(seed, "tomography/linearity"), tol);
    t1.name = "tomography/linearity";
    reports.push_back(t1);
    j["reports"] = reports_json(reports, d.passed);
    j["passed"] = d.passed;
    d.json = canonical(j);
    d.csv = csv_summary(reports);
    return d;
}

Document born_integral_document(const Wavefunction1D &psi, const IntervalDetector &det, double tol) {
    Document d;
    json j = header("born-integral", 0, tol);
    IntervalDecomposition dec = decompose_interval(psi, det);
    j["grid"] = {{"x_min", psi.x_min()}, {"x_max", psi.x_max()}, {"points", psi.size()}};
    j["interval"] = json::array({det.x1, det.x2});
    j["born_integral"] = born_integral(psi, det);
    j["c0"] = dec.c0;
    j["c1"] = dec.c1;
    j["phi0_defined"] = dec.phi0.has_value();
    j["phi1_defined"] = dec.phi1.has_value();
    std::vector<VerificationReport> reports{verify_isospin_born(psi, det, tol)};
    j["reports"] = reports_json(reports, d.passed);
    j["passed"] = d.passed;
    d.json = canonical(j);
    d.csv = csv_summary(reports);
    return d;
}

}  // namespace bornv
