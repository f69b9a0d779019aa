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

// Parse, print and re-parse every corpus file; check the recorded "# expect" values.

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bornverifier/dsl.hpp"

namespace fs = std::filesystem;
using namespace bornv;

namespace {

std::vector<fs::path> corpus() {
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(BV_CORPUS_DIR)) {
        if (e.path().extension() == ".qexp") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::pair<std::string, double>> expectations(const std::string &src) {
    std::vector<std::pair<std::string, double>> out;
    std::istringstream in(src);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# expect ", 0) != 0) {
            continue;
        }
        std::istringstream fields(line.substr(9));
        std::string name;
        double value = 0;
        fields >> name >> value;
        out.emplace_back(name, value);
    }
    return out;
}

}  // namespace

TEST_CASE("corpus size") {
    CHECK(corpus().size() >= 30);
}

TEST_CASE("round trip is structural identity and printing is idempotent") {
    for (const auto &path : corpus()) {
        CAPTURE(path.filename().string());
        auto spec = dsl::parse(slurp(path));
        auto printed = dsl::print(spec);
        auto again = dsl::parse(printed);
        CHECK(again == spec);
        CHECK(dsl::print(again) == printed);
    }
}

TEST_CASE("recorded probabilities") {
    std::size_t checked = 0;
    for (const auto &path : corpus()) {
        CAPTURE(path.filename().string());
        std::string src = slurp(path);
        auto spec = dsl::parse(src);
        auto again = dsl::parse(dsl::print(spec));
        for (const auto &[query, value] : expectations(src)) {
            CAPTURE(query);
            CHECK(std::abs(spec.evaluate(query).probability - value) < 1e-9);
            CHECK(again.evaluate(query).probability == spec.evaluate(query).probability);
            checked++;
        }
    }
    CHECK(checked >= 40);
}
