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

// Command-line front end. Talks to the library only through the C API.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bornverifier.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::optional<std::string> seed_text;
    double tolerance = 1e-9;
    std::string out;
    std::string csv;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--seed", c.seed_text, "RNG seed (default: $BORNVERIFIER_SEED, else 42)");
    cmd->add_option("--tolerance", c.tolerance, "Numerical tolerance")->capture_default_str();
    cmd->add_option("--out", c.out, "Write the JSON report here instead of stdout");
    cmd->add_option("--csv", c.csv, "Also write a CSV summary to this path");
}

uint64_t parse_seed(const std::string &text, const char *origin) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError(std::string("invalid seed '") + text + "' from " + origin);
    }
    errno = 0;
    unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
    if (errno == ERANGE) {
        throw UsageError(std::string("seed out of range from ") + origin);
    }
    return v;
}

uint64_t resolve_seed(const Common &c) {
    if (c.seed_text) {
        return parse_seed(*c.seed_text, "--seed");
    }
    if (const char *env = std::getenv("BORNVERIFIER_SEED"); env && *env) {
        return parse_seed(env, "BORNVERIFIER_SEED");
    }
    return 42;
}

void check_tolerance(double tol) {
    if (!(tol >= 0)) {
        throw UsageError("tolerance must be a non-negative number");
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &data) {
    std::ofstream out(path, std::ios::binary);
    out << data;
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

double parse_number(const std::string &s) {
    std::size_t slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash != std::string::npos) {
            double num = std::stod(s.substr(0, slash), &used);
            if (used != slash) {
                throw std::invalid_argument(s);
            }
            std::string den_text = s.substr(slash + 1);
            double den = std::stod(den_text, &used);
            if (used != den_text.size() || den == 0) {
                throw std::invalid_argument(s);
            }
            return num / den;
        }
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::logic_error &) {
        throw UsageError("invalid number '" + s + "'");
    }
}

std::vector<double> parse_list(const std::string &s, std::size_t expected, const char *what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(item));
    }
    if (out.size() != expected) {
        throw UsageError(std::string(what) + " expects " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

// "diag:a,b" or "full:m00,m01,m10,m11" (real entries).
std::vector<double> parse_metric(const std::string &s) {
    std::vector<double> m(8, 0.0);
    if (s.rfind("diag:", 0) == 0) {
        auto d = parse_list(s.substr(5), 2, "--A diag");
        m[0] = d[0];
        m[6] = d[1];
    } else if (s.rfind("full:", 0) == 0) {
        auto f = parse_list(s.substr(5), 4, "--A full");
        for (std::size_t k = 0; k < 4; k++) {
            m[2 * k] = f[k];
        }
    } else {
        throw UsageError("--A must be 'diag:a,b' or 'full:m00,m01,m10,m11'");
    }
    return m;
}

// Library failures are verification-level problems unless they come from the input.
int library_error(bv_status s, const std::string &context) {
    std::cerr << "bornverifier: " << context << ": " << bv_last_error() << "\n";
    return s == BV_ERROR_INTERNAL ? kExitFail : kExitUsage;
}

int emit(bv_document *doc, const Common &c) {
    std::string json = bv_document_json(doc);
    std::string csv = bv_document_csv(doc);
    bool passed = bv_document_passed(doc) != 0;
    bv_document_free(doc);
    if (c.out.empty()) {
        std::cout << json;
        std::cout.flush();
    } else {
        write_file(c.out, json);
    }
    if (!c.csv.empty()) {
        write_file(c.csv, csv);
    }
    return passed ? kExitPass : kExitFail;
}

struct ExperimentHandle {
    bv_experiment *ptr = nullptr;
    ~ExperimentHandle() { bv_experiment_free(ptr); }
};

struct DetectorHandle {
    bv_detector *ptr = nullptr;
    ~DetectorHandle() { bv_detector_free(ptr); }
};

struct WavefunctionHandle {
    bv_wavefunction *ptr = nullptr;
    ~WavefunctionHandle() { bv_wavefunction_free(ptr); }
};

std::optional<int> load_experiment(const std::string &path, ExperimentHandle &h) {
    std::string src = read_file(path);
    bv_parse_error pos{0, 0};
    bv_status s = bv_experiment_parse(src.data(), src.size(), &h.ptr, &pos);
    if (s == BV_ERROR_PARSE) {
        std::cerr << path << ":" << bv_last_error() << "\n";
        return kExitUsage;
    }
    if (s != BV_OK) {
        return library_error(s, path);
    }
    return std::nullopt;
}

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", p);
    return buf;
}

struct EvalArgs {
    std::string file;
    std::vector<std::string> queries;
    bool all = false;
};

int cmd_eval(const EvalArgs &a) {
    ExperimentHandle exp;
    if (auto rc = load_experiment(a.file, exp)) {
        return *rc;
    }
    std::vector<std::string> names = a.queries;
    std::size_t count = 0;
    bv_experiment_query_count(exp.ptr, &count);
    if (names.empty()) {
        if (count == 0) {
            std::cerr << "bornverifier: " << a.file << " declares no queries\n";
            return kExitUsage;
        }
        for (std::size_t k = 0; k < (a.all ? count : 1); k++) {
            const char *n = nullptr;
            bv_experiment_query_name(exp.ptr, k, &n);
            names.emplace_back(n);
        }
    }
    bool labelled = names.size() > 1;
    for (const auto &q : names) {
        double p = 0;
        bv_status s = bv_experiment_evaluate(exp.ptr, q.c_str(), &p, nullptr);
        if (s == BV_ERROR_NOT_FOUND || s == BV_ERROR_INVALID_ARGUMENT) {
            std::cerr << "bornverifier: " << bv_last_error() << "\n";
            return kExitUsage;
        }
        if (s != BV_OK) {
            return library_error(s, "evaluate " + q);
        }
        std::cout << (labelled ? q + " " : "") << format_probability(p) << "\n";
    }
    return kExitPass;
}

int cmd_verify(const Common &c, const std::string &subset, int depth, const std::string &inject) {
    check_tolerance(c.tolerance);
    if (depth < 1 || depth > 52) {
        throw UsageError("--depth must be between 1 and 52");
    }
    if (!inject.empty() && inject != "cubic3" && inject != "none") {
        throw UsageError("--inject accepts only 'cubic3' or 'none'");
    }
    bv_verify_options o = bv_verify_options_default();
    o.seed = resolve_seed(c);
    o.tolerance = c.tolerance;
    o.subset = subset.c_str();
    o.depth = depth;
    o.inject_cubic3 = inject == "cubic3";
    bv_document *doc = nullptr;
    if (bv_status s = bv_run_verify(&o, &doc); s != BV_OK) {
        return library_error(s, "verify");
    }
    return emit(doc, c);
}

int cmd_tomography(const Common &c, const std::string &file, const std::string &detector) {
    check_tolerance(c.tolerance);
    uint64_t seed = resolve_seed(c);
    ExperimentHandle exp;
    if (auto rc = load_experiment(file, exp)) {
        return *rc;
    }
    DetectorHandle det;
    if (bv_status s = bv_experiment_detector(exp.ptr, detector.empty() ? nullptr : detector.c_str(), &det.ptr);
        s != BV_OK) {
        std::cerr << "bornverifier: " << file << ": " << bv_last_error() << "\n";
        return kExitUsage;
    }
    std::string name = detector;
    if (name.empty()) {
        const char *first = nullptr;
        bv_experiment_detector_name(exp.ptr, 0, &first);
        name = first;
    }
    bv_document *doc = nullptr;
    if (bv_status s = bv_run_tomography(det.ptr, name.c_str(), seed, c.tolerance, &doc); s != BV_OK) {
        return library_error(s, "tomography");
    }
    return emit(doc, c);
}

int cmd_counterexamples(const Common &c, const std::string &rule, const std::string &metric, std::size_t instances) {
    check_tolerance(c.tolerance);
    uint64_t seed = resolve_seed(c);
    if (rule != "born" && rule != "random1" && rule != "modified2" && rule != "cubic3") {
        throw UsageError("unknown rule '" + rule + "' (born, random1, modified2, cubic3)");
    }
    std::vector<double> m;
    if (rule == "modified2") {
        if (metric.empty()) {
            throw UsageError("modified2 needs --A");
        }
        m = parse_metric(metric);
    } else if (!metric.empty()) {
        throw UsageError("--A applies only to modified2");
    }
    if (instances == 0) {
        throw UsageError("--instances must be positive");
    }
    bv_document *doc = nullptr;
    bv_status s = bv_run_counterexamples(rule.c_str(), seed, m.empty() ? nullptr : m.data(), instances, c.tolerance,
                                         &doc);
    if (s != BV_OK) {
        return library_error(s, "counterexamples");
    }
    return emit(doc, c);
}

struct BornIntegralArgs {
    std::string gaussian;
    bool uniform = false;
    std::string file;
    std::string grid;
    std::string interval;
};

int cmd_born_integral(const Common &c, const BornIntegralArgs &a) {
    check_tolerance(c.tolerance);
    int sources = (a.gaussian.empty() ? 0 : 1) + (a.uniform ? 1 : 0) + (a.file.empty() ? 0 : 1);
    if (sources != 1) {
        throw UsageError("give exactly one of --gaussian, --uniform, --file");
    }
    WavefunctionHandle wf;
    std::vector<double> window;
    bv_status s = BV_OK;
    if (!a.file.empty()) {
        if (!a.grid.empty()) {
            throw UsageError("--grid does not apply to --file");
        }
        std::string text = read_file(a.file);
        s = bv_wavefunction_read(text.data(), text.size(), &wf.ptr);
    } else {
        std::vector<double> g;
        std::vector<double> ms;
        if (!a.grid.empty()) {
            g = parse_list(a.grid, 3, "--grid");
        } else if (a.uniform) {
            throw UsageError("--uniform needs --grid");
        }
        if (!a.gaussian.empty()) {
            ms = parse_list(a.gaussian, 2, "--gaussian");
            if (g.empty()) {
                g = {ms[0] - 10 * ms[1], ms[0] + 10 * ms[1], 100000};
            }
            window = {ms[0] - ms[1], ms[0] + ms[1]};
        }
        if (!(g[2] >= 1 && g[2] <= 1e8) || g[2] != static_cast<double>(static_cast<std::size_t>(g[2]))) {
            throw UsageError("grid point count must be a positive integer");
        }
        auto n = static_cast<std::size_t>(g[2]);
        s = a.uniform ? bv_wavefunction_uniform(g[0], g[1], n, &wf.ptr)
                      : bv_wavefunction_gaussian(ms[0], ms[1], g[0], g[1], n, &wf.ptr);
    }
    if (s != BV_OK) {
        std::cerr << "bornverifier: wavefunction: " << bv_last_error() << "\n";
        return kExitUsage;
    }
    if (!a.interval.empty()) {
        window = parse_list(a.interval, 2, "--interval");
    } else if (window.empty()) {
        throw UsageError("--interval is required for this wavefunction");
    }
    bv_document *doc = nullptr;
    s = bv_run_born_integral(wf.ptr, window[0], window[1], c.tolerance, &doc);
    if (s != BV_OK) {
        std::cerr << "bornverifier: born-integral: " << bv_last_error() << "\n";
        return kExitUsage;
    }
    return emit(doc, c);
}

int run(int argc, char **argv) {
    CLI::App app{"Numerical verification of a derivation of the Born rule from envariance.", "bornverifier"};
    app.set_version_flag("--version", std::string(bv_version()));
    app.require_subcommand(1);

    Common verify_common;
    std::string subset;
    int depth = 20;
    std::string inject;
    auto *verify = app.add_subcommand("verify", "Run the full verification suite");
    add_common(verify, verify_common);
    verify->add_option("--subset", subset, "Comma-separated report-name prefixes to run");
    verify->add_option("--depth", depth, "Dyadic refinement depth")->capture_default_str();
    verify->add_option("--inject", inject, "Replace the detector response by a counterexample rule (cubic3)");

    EvalArgs eval_args;
    auto *eval = app.add_subcommand("eval", "Evaluate queries of an experiment file");
    eval->add_option("file", eval_args.file, "Experiment file (.qexp)")->required();
    eval->add_option("query", eval_args.queries, "Query names (default: the first query)");
    eval->add_flag("--all", eval_args.all, "Evaluate every query");

    Common tomo_common;
    std::string tomo_file;
    std::string tomo_detector;
    auto *tomo = app.add_subcommand("tomography", "Recover the affine response and POVM effect of a detector");
    add_common(tomo, tomo_common);
    tomo->add_option("file", tomo_file, "Experiment file declaring the detector")->required();
    tomo->add_option("--detector", tomo_detector, "Detector name (default: the first declared)");

    Common cx_common;
    std::string rule;
    std::string metric;
    std::size_t instances = 200;
    auto *cx = app.add_subcommand("counterexamples", "Run the assumption battery against a probability rule");
    add_common(cx, cx_common);
    cx->add_option("rule", rule, "born, random1, modified2 or cubic3")->required();
    cx->add_option("--A", metric, "Metric operator for modified2: diag:a,b or full:m00,m01,m10,m11");
    cx->add_option("--instances", instances, "Random instances per identity")->capture_default_str();

    Common bi_common;
    BornIntegralArgs bi;
    auto *born = app.add_subcommand("born-integral", "Check the integral Born rule for an interval detector");
    add_common(born, bi_common);
    born->add_option("--gaussian", bi.gaussian, "Gaussian wavefunction MU,SIGMA");
    born->add_flag("--uniform", bi.uniform, "Uniform wavefunction on the grid");
    born->add_option("--file", bi.file, "Wavefunction table: rows 'x re' or 'x re im'");
    born->add_option("--grid", bi.grid, "XMIN,XMAX,N (Gaussian default: MU-10SIGMA,MU+10SIGMA,100000)");
    born->add_option("--interval", bi.interval, "X1,X2 (Gaussian default: MU-SIGMA,MU+SIGMA)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(verify_common, subset, depth, inject);
        }
        if (*eval) {
            return cmd_eval(eval_args);
        }
        if (*tomo) {
            return cmd_tomography(tomo_common, tomo_file, tomo_detector);
        }
        if (*cx) {
            return cmd_counterexamples(cx_common, rule, metric, instances);
        }
        return cmd_born_integral(bi_common, bi);
    } catch (const UsageError &e) {
        std::cerr << "bornverifier: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception &e) {
        std::cerr << "bornverifier: " << e.what() << "\n";
        return kExitFail;
    } catch (...) {
        std::cerr << "bornverifier: unexpected error\n";
        return kExitFail;
    }
}
