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

#include "bornverifier/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace bornv::dsl {

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::string token)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (token.empty() ? "" : " (at '" + token + "')")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      token_(std::move(token)) {
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, Imag, Ket, Symbol, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    double value = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    int depth = 0;
    // Last real character, used to position end-of-line and end-of-input tokens.
    std::size_t last_line = 1;
    std::size_t last_col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; k++) {
            last_line = line;
            last_col = col;
            if (src[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
            i++;
        }
    };
    auto push = [&](Tok kind, std::string text, std::size_t l, std::size_t c, double v = 0) {
        out.push_back(Token{kind, std::move(text), v, l, c});
    };

    while (i < src.size()) {
        char c = src[i];
        const std::size_t l = line;
        const std::size_t cl = col;
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        if (c == '\n') {
            if (depth == 0) {
                push(Tok::Newline, "", l, cl);
            }
            advance(1);
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) {
                j++;
            }
            std::string text(src.substr(i, j - i));
            advance(j - i);
            push(Tok::Ident, std::move(text), l, cl);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                j++;
            }
            if (j < src.size() && src[j] == '.') {
                j++;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                    j++;
                }
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) {
                    k++;
                }
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                        k++;
                    }
                    j = k;
                }
            }
            std::string text(src.substr(i, j - i));
            double v = std::strtod(text.c_str(), nullptr);
            if (!std::isfinite(v)) {
                throw ParseError(l, cl, "number out of range", text);
            }
            bool imag = j < src.size() && src[j] == 'i' && !(j + 1 < src.size() && ident_char(src[j + 1]));
            if (imag) {
                j++;
            }
            std::string full(src.substr(i, j - i));
            advance(j - i);
            push(imag ? Tok::Imag : Tok::Number, std::move(full), l, cl, v);
            continue;
        }
        if (c == '|') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '>' && src[j] != '\n') {
                j++;
            }
            if (j >= src.size() || src[j] != '>') {
                throw ParseError(l, cl, "unterminated ket", std::string(src.substr(i, j - i)));
            }
            std::string body(src.substr(i + 1, j - i - 1));
            for (char ch : body) {
                if (!(ch == 'u' || ch == 'd' || std::isdigit(static_cast<unsigned char>(ch)))) {
                    throw ParseError(l, cl, "ket characters must be u, d or a digit",
                                     std::string(src.substr(i, j - i + 1)));
                }
            }
            if (body.empty()) {
                throw ParseError(l, cl, "empty ket", "|>");
            }
            advance(j - i + 1);
            push(Tok::Ket, std::move(body), l, cl);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            advance(2);
            push(Tok::Symbol, "->", l, cl);
            continue;
        }
        if (std::string_view("=,:()[]*+-").find(c) != std::string_view::npos) {
            if (c == '(' || c == '[') {
                depth++;
            } else if (c == ')' || c == ']') {
                if (--depth < 0) {
                    throw ParseError(l, cl, "unbalanced bracket", std::string(1, c));
                }
            }
            advance(1);
            push(Tok::Symbol, std::string(1, c), l, cl);
            continue;
        }
        throw ParseError(l, cl, "unexpected character", std::string(1, c));
    }
    if (depth != 0) {
        throw ParseError(last_line, last_col, "unclosed bracket at end of input", "");
    }
    push(Tok::Newline, "", last_line, last_col);
    push(Tok::End, "", last_line, last_col);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string> &builtin_names() {
    static const std::set<std::string> names{"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "SWAP", "RX", "RY", "RZ"};
    return names;
}

const std::set<std::string> &keywords() {
    static const std::set<std::string> k{"wire", "state", "unitary", "detector", "prepare", "gate", "measure",
                                         "query", "on", "as", "dim", "sqrt", "i", "SG", "effect", "projective",
                                         "ancilla", "coupling", "projector"};
    return k;
}

class Parser {
   public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    ExperimentSpec run() {
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Newline) {
                next();
                continue;
            }
            statement();
        }
        if (!inline_outcomes_.empty()) {
            spec_.queries.insert(spec_.queries.begin(), QueryDecl{"default", inline_outcomes_});
        }
        if (!spec_.steps.empty() && !prepared_) {
            throw ParseError(first_step_.line, first_step_.column, "circuit has steps but no prepare line",
                             first_step_.text);
        }
        if (!spec_.queries.empty() && !prepared_) {
            throw ParseError(first_query_.line, first_query_.column, "query without a prepare line",
                             first_query_.text);
        }
        return std::move(spec_);
    }

   private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ExperimentSpec spec_;

    std::map<std::string, std::size_t> wire_index_;
    std::map<std::string, const StateDecl *> state_index_;
    std::set<std::string> unitary_names_;
    std::map<std::string, std::size_t> unitary_dim_;
    std::set<std::string> detector_names_;
    std::map<std::string, bool> label_is_sg_;
    std::set<std::string> query_names_;
    std::vector<std::pair<std::string, Outcome>> inline_outcomes_;
    Token inline_default_{};
    bool have_inline_ = false;
    bool explicit_default_ = false;
    bool prepared_ = false;
    bool wires_closed_ = false;
    std::size_t measure_count_ = 0;
    Token first_step_{};
    Token first_query_{};

    const Token &peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token &next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token &t, const std::string &msg) const {
        std::string shown = t.kind == Tok::Ket ? "|" + t.text + ">" : t.text;
        if (t.kind == Tok::Newline) {
            shown = "end of line";
        } else if (t.kind == Tok::End) {
            shown = "end of input";
        }
        throw ParseError(t.line, t.column, msg, shown);
    }

    bool is_symbol(const Token &t, std::string_view s) const { return t.kind == Tok::Symbol && t.text == s; }
    bool is_word(const Token &t, std::string_view s) const { return t.kind == Tok::Ident && t.text == s; }

    const Token &expect_symbol(std::string_view s) {
        if (!is_symbol(peek(), s)) {
            fail(peek(), "expected '" + std::string(s) + "'");
        }
        return next();
    }
    void expect_word(std::string_view s) {
        if (!is_word(peek(), s)) {
            fail(peek(), "expected '" + std::string(s) + "'");
        }
        next();
    }
    const Token &expect_name(const char *what) {
        if (peek().kind != Tok::Ident) {
            fail(peek(), std::string("expected ") + what);
        }
        return next();
    }
    const Token &expect_new_name(const char *what) {
        const Token &t = expect_name(what);
        if (keywords().count(t.text)) {
            fail(t, std::string("reserved word used as ") + what);
        }
        return t;
    }
    void end_of_statement() {
        if (peek().kind != Tok::Newline) {
            fail(peek(), "unexpected token after statement");
        }
        next();
    }

    void statement() {
        const Token &head = peek();
        if (head.kind != Tok::Ident) {
            fail(head, "expected a statement keyword");
        }
        try {
            dispatch(head);
        } catch (const ParseError &) {
            throw;
        } catch (const std::exception &e) {
            // Numeric failures (overflow into a matrix, dimension limits) land on the statement.
            fail(head, e.what());
        }
        end_of_statement();
    }

    void dispatch(const Token &head) {
        if (head.text == "wire") {
            wire();
        } else if (head.text == "state") {
            wires_closed_ = true;
            state();
        } else if (head.text == "unitary") {
            unitary();
        } else if (head.text == "detector") {
            detector();
        } else if (head.text == "prepare") {
            wires_closed_ = true;
            prepare();
        } else if (head.text == "gate") {
            wires_closed_ = true;
            if (spec_.steps.empty()) {
                first_step_ = head;
            }
            gate();
        } else if (head.text == "measure") {
            wires_closed_ = true;
            if (spec_.steps.empty()) {
                first_step_ = head;
            }
            measure();
        } else if (head.text == "query") {
            if (spec_.queries.empty()) {
                first_query_ = head;
            }
            query();
        } else {
            fail(head, "unknown statement");
        }
    }

    std::size_t integer(const char *what) {
        const Token &t = peek();
        if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail(t, std::string("expected an integer ") + what);
        }
        next();
        return static_cast<std::size_t>(t.value);
    }

    void wire() {
        next();
        if (wires_closed_) {
            fail(toks_[pos_ - 1], "wires must be declared before states, prepare lines and steps");
        }
        const Token &name = expect_new_name("wire name");
        if (wire_index_.count(name.text)) {
            fail(name, "wire already declared");
        }
        std::size_t dim = 2;
        if (is_word(peek(), "dim")) {
            next();
            const Token &t = peek();
            dim = integer("dimension");
            if (dim < 2) {
                fail(t, "wire dimension must be at least 2");
            }
        }
        std::vector<std::size_t> dims = spec_.dims();
        dims.push_back(dim);
        try {
            checked_total_dim(dims);
        } catch (const std::exception &e) {
            fail(name, e.what());
        }
        wire_index_[name.text] = spec_.wires.size();
        spec_.wires.push_back({name.text, dim});
    }

    // Scalars -------------------------------------------------------------

    Complex factor() {
        const Token &t = peek();
        if (t.kind == Tok::Number) {
            next();
            return t.value;
        }
        if (t.kind == Tok::Imag) {
            next();
            return {0, t.value};
        }
        if (is_word(t, "i")) {
            next();
            return {0, 1};
        }
        if (is_word(t, "sqrt")) {
            next();
            expect_symbol("(");
            const Token &arg = peek();
            Complex v = scalar_sum();
            expect_symbol(")");
            if (v.imag() != 0 || v.real() < 0) {
                fail(arg, "sqrt needs a non-negative real argument");
            }
            return std::sqrt(v.real());
        }
        if (is_symbol(t, "(")) {
            next();
            Complex v = scalar_sum();
            expect_symbol(")");
            return v;
        }
        fail(t, "expected a number");
    }

    Complex product() {
        Complex v = factor();
        while (is_symbol(peek(), "*") && peek(1).kind != Tok::Ket) {
            next();
            v *= factor();
        }
        return v;
    }

    Complex signed_product() {
        if (is_symbol(peek(), "-")) {
            next();
            return -product();
        }
        if (is_symbol(peek(), "+")) {
            next();
        }
        return product();
    }

    Complex scalar_sum() {
        Complex v = signed_product();
        while (is_symbol(peek(), "+") || is_symbol(peek(), "-")) {
            bool minus = next().text == "-";
            Complex p = product();
            v += minus ? -p : p;
        }
        return v;
    }

    double real_scalar(const char *what) {
        const Token &t = peek();
        Complex v = scalar_sum();
        if (v.imag() != 0) {
            fail(t, std::string(what) + " must be real");
        }
        return v.real();
    }

    // Kets and literals ---------------------------------------------------

    std::size_t ket_index(const Token &t, const std::vector<std::size_t> &dims) {
        if (t.text.size() != dims.size()) {
            fail(t, "ket has " + std::to_string(t.text.size()) + " factor(s), expected " +
                        std::to_string(dims.size()));
        }
        std::size_t index = 0;
        for (std::size_t k = 0; k < dims.size(); k++) {
            char ch = t.text[k];
            std::size_t digit;
            if (ch == 'u' || ch == 'd') {
                if (dims[k] != 2) {
                    fail(t, "u/d used on a factor of dimension " + std::to_string(dims[k]));
                }
                digit = ch == 'u' ? 0 : 1;
            } else {
                digit = static_cast<std::size_t>(ch - '0');
                if (digit >= dims[k]) {
                    fail(t, "ket digit out of range for factor " + std::to_string(k + 1));
                }
            }
            index = index * dims[k] + digit;
        }
        return index;
    }

    std::vector<Complex> ket_sum(const std::vector<std::size_t> &dims) {
        std::size_t total = 1;
        for (auto d : dims) {
            total *= d;
        }
        std::vector<Complex> amps(total);
        bool first = true;
        while (true) {
            Complex sign = 1;
            if (is_symbol(peek(), "-")) {
                next();
                sign = -1;
            } else if (is_symbol(peek(), "+")) {
                next();
            } else if (!first) {
                break;
            }
            first = false;
            Complex coef = 1;
            if (peek().kind != Tok::Ket) {
                coef = product();
                expect_symbol("*");
            }
            if (peek().kind != Tok::Ket) {
                fail(peek(), "expected a ket");
            }
            const Token &k = next();
            amps[ket_index(k, dims)] += sign * coef;
        }
        return amps;
    }

    std::vector<Complex> vector_literal() {
        expect_symbol("[");
        std::vector<Complex> v;
        if (!is_symbol(peek(), "]")) {
            v.push_back(scalar_sum());
            while (is_symbol(peek(), ",")) {
                next();
                v.push_back(scalar_sum());
            }
        }
        expect_symbol("]");
        return v;
    }

    ComplexMatrix matrix_literal() {
        const Token &open = expect_symbol("[");
        std::vector<std::vector<Complex>> rows;
        rows.push_back(vector_literal());
        while (is_symbol(peek(), ",")) {
            next();
            rows.push_back(vector_literal());
        }
        expect_symbol("]");
        std::vector<Complex> entries;
        for (const auto &r : rows) {
            if (r.size() != rows.front().size() || r.empty()) {
                fail(open, "matrix rows must be non-empty and of equal length");
            }
            entries.insert(entries.end(), r.begin(), r.end());
        }
        return ComplexMatrix(rows.size(), rows.front().size(), std::move(entries));
    }

    std::vector<Complex> state_body(const std::vector<std::size_t> &dims, const Token &at) {
        std::vector<Complex> amps;
        if (is_symbol(peek(), "[")) {
            amps = vector_literal();
            std::size_t total = 1;
            for (auto d : dims) {
                total *= d;
            }
            if (amps.size() != total) {
                fail(at, "amplitude list has " + std::to_string(amps.size()) + " entries, expected " +
                             std::to_string(total));
            }
        } else {
            amps = ket_sum(dims);
        }
        double n = std::sqrt(norm_squared(amps));
        if (std::abs(n - 1) > kDefaultTolerance) {
            fail(at, "state is not normalized (norm " + std::to_string(n) + ")");
        }
        return amps;
    }

    // Statements ----------------------------------------------------------

    void state() {
        next();
        const Token &name = expect_new_name("state name");
        if (state_index_.count(name.text)) {
            fail(name, "state already declared");
        }
        StateDecl decl;
        decl.name = name.text;
        std::vector<std::size_t> dims;
        if (is_word(peek(), "on")) {
            next();
            std::set<std::string> seen;
            while (peek().kind == Tok::Ident) {
                const Token &w = next();
                dims.push_back(wire_dim(w));
                if (!seen.insert(w.text).second) {
                    fail(w, "wire listed twice");
                }
                decl.wires.push_back(w.text);
            }
            if (decl.wires.empty()) {
                fail(peek(), "expected wire names after 'on'");
            }
        } else {
            dims = spec_.dims();
            if (dims.empty()) {
                fail(name, "state declared before any wire");
            }
        }
        const Token &eq = expect_symbol("=");
        decl.amplitudes = state_body(dims, eq);
        spec_.states.push_back(std::move(decl));
        rebuild_state_index();
    }

    void rebuild_state_index() {
        state_index_.clear();
        for (const auto &s : spec_.states) {
            state_index_[s.name] = &s;
        }
    }

    std::size_t wire_dim(const Token &w) {
        auto it = wire_index_.find(w.text);
        if (it == wire_index_.end()) {
            fail(w, "undeclared wire");
        }
        return spec_.wires[it->second].dim;
    }

    void unitary() {
        next();
        const Token &name = expect_new_name("unitary name");
        if (builtin_names().count(name.text)) {
            fail(name, "name collides with a builtin gate");
        }
        if (unitary_names_.count(name.text)) {
            fail(name, "unitary already declared");
        }
        expect_symbol("=");
        const Token &at = peek();
        ComplexMatrix m = matrix_literal();
        if (!m.is_square()) {
            fail(at, "unitary must be square");
        }
        if (!m.is_unitary(kDefaultTolerance)) {
            fail(at, "matrix is not unitary");
        }
        unitary_names_.insert(name.text);
        unitary_dim_[name.text] = m.rows();
        spec_.unitaries.push_back({name.text, std::move(m)});
    }

    void detector() {
        next();
        const Token &name = expect_new_name("detector name");
        if (detector_names_.count(name.text)) {
            fail(name, "detector already declared");
        }
        expect_symbol("=");
        const Token &kind = expect_name("detector kind");
        DetectorSpec spec;
        if (kind.text == "effect") {
            spec = EffectSpec{matrix_literal()};
        } else if (kind.text == "projective") {
            expect_symbol("(");
            double x = real_scalar("direction component");
            expect_symbol(",");
            double y = real_scalar("direction component");
            expect_symbol(",");
            double z = real_scalar("direction component");
            expect_symbol(")");
            spec = ProjectiveSpec{{x, y, z}};
        } else if (kind.text == "ancilla") {
            const Token &dt = peek();
            std::size_t dim = integer("ancilla dimension");
            if (dim < 2) {
                fail(dt, "ancilla dimension must be at least 2");
            }
            expect_word("coupling");
            ComplexMatrix coupling = matrix_literal();
            expect_word("projector");
            ComplexMatrix projector = matrix_literal();
            spec = AncillaSpec{dim, std::move(coupling), std::move(projector)};
        } else {
            fail(kind, "detector kind must be effect, projective or ancilla");
        }
        try {
            build_detector(spec);
        } catch (const std::exception &e) {
            fail(kind, e.what());
        }
        detector_names_.insert(name.text);
        spec_.detectors.push_back({name.text, std::move(spec)});
    }

    void prepare() {
        const Token &head = next();
        if (prepared_) {
            fail(head, "only one prepare line is allowed");
        }
        if (spec_.wires.empty()) {
            fail(head, "prepare before any wire");
        }
        prepared_ = true;
        if (peek().kind == Tok::Ident && !is_word(peek(), "sqrt") && !is_word(peek(), "i")) {
            std::vector<bool> covered(spec_.wires.size(), false);
            while (peek().kind == Tok::Ident) {
                const Token &s = next();
                auto it = state_index_.find(s.text);
                if (it == state_index_.end()) {
                    fail(s, "undeclared state");
                }
                std::vector<std::string> ws = it->second->wires;
                if (ws.empty()) {
                    for (const auto &w : spec_.wires) {
                        ws.push_back(w.name);
                    }
                }
                for (const auto &w : ws) {
                    std::size_t k = wire_index_.at(w);
                    if (covered[k]) {
                        fail(s, "wire '" + w + "' prepared twice");
                    }
                    covered[k] = true;
                }
                spec_.prepare.push_back(s.text);
            }
            for (std::size_t k = 0; k < covered.size(); k++) {
                if (!covered[k]) {
                    fail(head, "wire '" + spec_.wires[k].name + "' is not prepared");
                }
            }
        } else {
            const Token &at = peek();
            spec_.prepare_inline = state_body(spec_.dims(), at);
        }
    }

    void gate() {
        next();
        const Token &name = expect_name("gate name");
        GateStep g;
        g.gate = name.text;
        if (is_symbol(peek(), "(")) {
            next();
            g.params.push_back(real_scalar("gate parameter"));
            while (is_symbol(peek(), ",")) {
                next();
                g.params.push_back(real_scalar("gate parameter"));
            }
            expect_symbol(")");
        }
        expect_word("on");
        std::size_t sub = 1;
        std::set<std::string> seen;
        const Token &first_wire = peek();
        while (peek().kind == Tok::Ident) {
            const Token &w = next();
            sub *= wire_dim(w);
            if (!seen.insert(w.text).second) {
                fail(w, "wire listed twice");
            }
            g.wires.push_back(w.text);
        }
        if (g.wires.empty()) {
            fail(peek(), "expected wire names after 'on'");
        }
        std::size_t dim;
        if (unitary_names_.count(g.gate)) {
            if (!g.params.empty()) {
                fail(name, "declared unitaries take no parameters");
            }
            dim = unitary_dim_.at(g.gate);
        } else {
            std::optional<ComplexMatrix> m;
            try {
                m = builtin_gate(g.gate, g.params);
            } catch (const std::exception &e) {
                fail(name, e.what());
            }
            if (!m) {
                fail(name, "unknown gate");
            }
            dim = m->rows();
        }
        if (dim != sub) {
            fail(first_wire, "gate acts on dimension " + std::to_string(dim) + " but the wires span " +
                                 std::to_string(sub));
        }
        spec_.steps.push_back(std::move(g));
    }

    void measure() {
        next();
        const Token &w = expect_name("wire name");
        if (wire_dim(w) != 2) {
            fail(w, "only spin wires can be measured");
        }
        const Token &dev = expect_name("device");
        bool sg = dev.text == "SG";
        if (!sg && !detector_names_.count(dev.text)) {
            fail(dev, "undeclared detector");
        }
        MeasureStep m{w.text, dev.text, "m" + std::to_string(measure_count_)};
        Token label_tok = dev;
        if (is_word(peek(), "as")) {
            next();
            label_tok = expect_new_name("measurement label");
            m.label = label_tok.text;
        }
        if (label_is_sg_.count(m.label)) {
            fail(label_tok, "measurement label already used");
        }
        label_is_sg_[m.label] = sg;
        measure_count_++;
        if (is_symbol(peek(), "->")) {
            next();
            const Token &o = expect_name("outcome");
            Outcome out = outcome_for(o, sg);
            if (explicit_default_) {
                fail(o, "inline outcome conflicts with an explicit 'default' query");
            }
            if (!have_inline_) {
                inline_default_ = o;
                have_inline_ = true;
            }
            inline_outcomes_.emplace_back(m.label, out);
        }
        spec_.steps.push_back(std::move(m));
    }

    Outcome outcome_for(const Token &o, bool sg) {
        auto out = parse_outcome(o.text);
        if (!out) {
            fail(o, "unknown outcome");
        }
        bool fits = sg ? (*out == Outcome::Up || *out == Outcome::Down)
                       : (*out == Outcome::Click || *out == Outcome::NoClick);
        if (!fits) {
            fail(o, sg ? "Stern-Gerlach outcomes are up/down" : "detector outcomes are click/noclick");
        }
        return *out;
    }

    void query() {
        next();
        const Token &name = expect_new_name("query name");
        if (query_names_.count(name.text) || (name.text == "default" && have_inline_)) {
            fail(name, "query already declared");
        }
        if (name.text == "default") {
            explicit_default_ = true;
        }
        expect_symbol(":");
        QueryDecl q{name.text, {}};
        std::set<std::string> seen;
        bool first = true;
        while (peek().kind != Tok::Newline) {
            if (!first) {
                expect_symbol(",");
            }
            first = false;
            const Token &label = expect_name("measurement label");
            auto it = label_is_sg_.find(label.text);
            if (it == label_is_sg_.end()) {
                fail(label, "unknown measurement label");
            }
            if (!seen.insert(label.text).second) {
                fail(label, "label appears twice in the query");
            }
            expect_symbol("=");
            const Token &o = expect_name("outcome");
            q.outcomes.emplace_back(label.text, outcome_for(o, it->second));
        }
        query_names_.insert(name.text);
        spec_.queries.push_back(std::move(q));
    }
};

// ---------------------------------------------------------------------------
// Printer

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string complex_text(Complex z) {
    if (z.imag() == 0) {
        return num(z.real());
    }
    if (z.real() == 0) {
        return num(z.imag()) + "i";
    }
    return "(" + num(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + num(std::abs(z.imag())) + "i)";
}

std::string vector_text(std::span<const Complex> v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); k++) {
        s += (k ? ", " : "") + complex_text(v[k]);
    }
    return s + "]";
}

std::string matrix_text(const ComplexMatrix &m) {
    std::string s = "[";
    for (std::size_t r = 0; r < m.rows(); r++) {
        s += r ? ", " : "";
        s += vector_text(m.entries().subspan(r * m.cols(), m.cols()));
    }
    return s + "]";
}

std::string ket_text(const std::vector<std::size_t> &dims, const std::vector<Complex> &amps) {
    for (auto d : dims) {
        if (d > 10) {
            return vector_text(amps);
        }
    }
    std::string s;
    for (std::size_t idx = 0; idx < amps.size(); idx++) {
        Complex z = amps[idx];
        if (z == Complex{}) {
            continue;
        }
        std::string label(dims.size(), '0');
        std::size_t rem = idx;
        for (std::size_t k = dims.size(); k-- > 0;) {
            std::size_t digit = rem % dims[k];
            rem /= dims[k];
            label[k] = dims[k] == 2 ? (digit ? 'd' : 'u') : static_cast<char>('0' + digit);
        }
        bool negative = (z.imag() == 0 && std::signbit(z.real())) || (z.real() == 0 && std::signbit(z.imag()));
        if (negative) {
            z = -z;
        }
        if (s.empty()) {
            s += negative ? "-" : "";
        } else {
            s += negative ? " - " : " + ";
        }
        if (z != Complex{1}) {
            std::string c = complex_text(z);
            s += c + "*";
        }
        s += "|" + label + ">";
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::size_t> ExperimentSpec::dims() const {
    std::vector<std::size_t> d;
    for (const auto &w : wires) {
        d.push_back(w.dim);
    }
    return d;
}

std::size_t ExperimentSpec::wire_index(std::string_view name) const {
    for (std::size_t k = 0; k < wires.size(); k++) {
        if (wires[k].name == name) {
            return k;
        }
    }
    throw std::out_of_range("No wire named '" + std::string(name) + "'.");
}

const QueryDecl *ExperimentSpec::find_query(std::string_view name) const {
    for (const auto &q : queries) {
        if (q.name == name) {
            return &q;
        }
    }
    return nullptr;
}

const DetectorDecl *ExperimentSpec::find_detector(std::string_view name) const {
    for (const auto &d : detectors) {
        if (d.name == name) {
            return &d;
        }
    }
    return nullptr;
}

StateVector ExperimentSpec::initial_state() const {
    if (prepare_inline) {
        return StateVector(dims(), *prepare_inline);
    }
    if (prepare.empty()) {
        throw std::logic_error("Experiment has no prepare line.");
    }
    Ket ket;
    std::vector<std::size_t> order;
    for (const auto &name : prepare) {
        const StateDecl *s = nullptr;
        for (const auto &st : states) {
            if (st.name == name) {
                s = &st;
            }
        }
        if (!s) {
            throw std::logic_error("Unknown state '" + name + "'.");
        }
        std::vector<std::size_t> d;
        if (s->wires.empty()) {
            for (std::size_t k = 0; k < wires.size(); k++) {
                order.push_back(k);
            }
            d = dims();
        } else {
            for (const auto &w : s->wires) {
                order.push_back(wire_index(w));
                d.push_back(wires[order.back()].dim);
            }
        }
        Ket part(std::move(d), s->amplitudes);
        ket = ket.dims.empty() ? part : tensor_product(ket, part);
    }
    // Factor k of `ket` is wire order[k]; bring it back to wire order.
    std::vector<std::size_t> inverse(order.size());
    for (std::size_t k = 0; k < order.size(); k++) {
        inverse[order[k]] = k;
    }
    // Each part was checked to kDefaultTolerance; keep the amplitudes exactly as written.
    return StateVector(permute_factors(ket, inverse), kDefaultTolerance * static_cast<double>(prepare.size()));
}

Circuit ExperimentSpec::circuit() const {
    std::map<std::string, std::shared_ptr<const Detector>> built;
    for (const auto &d : detectors) {
        built[d.name] = std::make_shared<const Detector>(build_detector(d.spec));
    }
    std::map<std::string, ComplexMatrix> named;
    for (const auto &u : unitaries) {
        named.emplace(u.name, u.matrix);
    }
    std::vector<Step> steps_out;
    for (const auto &s : steps) {
        if (const auto *g = std::get_if<GateStep>(&s)) {
            std::vector<std::size_t> ws;
            for (const auto &w : g->wires) {
                ws.push_back(wire_index(w));
            }
            auto it = named.find(g->gate);
            ComplexMatrix m = it != named.end() ? it->second : *builtin_gate(g->gate, g->params);
            steps_out.push_back(Gate{std::move(ws), std::move(m)});
        } else {
            const auto &m = std::get<MeasureStep>(s);
            Device dev = SternGerlach{};
            if (m.device != "SG") {
                dev = built.at(m.device);
            }
            steps_out.push_back(Measure{wire_index(m.wire), dev, m.label});
        }
    }
    return Circuit(initial_state(), std::move(steps_out));
}

OutcomeQuery ExperimentSpec::outcome_query(std::string_view query_name) const {
    const QueryDecl *q = find_query(query_name);
    if (!q) {
        throw std::out_of_range("No query named '" + std::string(query_name) + "'.");
    }
    OutcomeQuery out;
    for (const auto &[label, o] : q->outcomes) {
        out[label] = o;
    }
    return out;
}

EvalResult ExperimentSpec::evaluate(std::string_view query_name) const {
    return bornv::evaluate(circuit(), outcome_query(query_name));
}

ExperimentSpec parse(std::string_view source) {
    return Parser(source).run();
}

std::string print(const ExperimentSpec &spec) {
    std::string out;
    auto line = [&](const std::string &s) { out += s + "\n"; };
    auto all_dims = spec.dims();
    for (const auto &w : spec.wires) {
        line("wire " + w.name + (w.dim == 2 ? "" : " dim " + std::to_string(w.dim)));
    }
    for (const auto &s : spec.states) {
        std::vector<std::size_t> d = all_dims;
        std::string on;
        if (!s.wires.empty()) {
            d.clear();
            on = " on";
            for (const auto &w : s.wires) {
                on += " " + w;
                d.push_back(spec.wires[spec.wire_index(w)].dim);
            }
        }
        line("state " + s.name + on + " = " + ket_text(d, s.amplitudes));
    }
    for (const auto &u : spec.unitaries) {
        line("unitary " + u.name + " = " + matrix_text(u.matrix));
    }
    for (const auto &d : spec.detectors) {
        std::string body;
        if (const auto *e = std::get_if<EffectSpec>(&d.spec)) {
            body = "effect " + matrix_text(e->m);
        } else if (const auto *p = std::get_if<ProjectiveSpec>(&d.spec)) {
            body = "projective (" + num(p->n.x) + ", " + num(p->n.y) + ", " + num(p->n.z) + ")";
        } else {
            const auto &a = std::get<AncillaSpec>(d.spec);
            body = "ancilla " + std::to_string(a.dim) + " coupling " + matrix_text(a.coupling) + " projector " +
                   matrix_text(a.projector);
        }
        line("detector " + d.name + " = " + body);
    }
    if (spec.prepare_inline) {
        line("prepare " + ket_text(all_dims, *spec.prepare_inline));
    } else if (!spec.prepare.empty()) {
        std::string s = "prepare";
        for (const auto &p : spec.prepare) {
            s += " " + p;
        }
        line(s);
    }
    for (const auto &st : spec.steps) {
        if (const auto *g = std::get_if<GateStep>(&st)) {
            std::string s = "gate " + g->gate;
            if (!g->params.empty()) {
                s += "(";
                for (std::size_t k = 0; k < g->params.size(); k++) {
                    s += (k ? ", " : "") + num(g->params[k]);
                }
                s += ")";
            }
            s += " on";
            for (const auto &w : g->wires) {
                s += " " + w;
            }
            line(s);
        } else {
            const auto &m = std::get<MeasureStep>(st);
            line("measure " + m.wire + " " + m.device + " as " + m.label);
        }
    }
    for (const auto &q : spec.queries) {
        std::string s = "query " + q.name + ":";
        for (std::size_t k = 0; k < q.outcomes.size(); k++) {
            s += (k ? ", " : " ") + q.outcomes[k].first + "=" + outcome_name(q.outcomes[k].second);
        }
        line(s);
    }
    return out;
}

Detector build_detector(const DetectorSpec &spec) {
    if (const auto *e = std::get_if<EffectSpec>(&spec)) {
        return Detector::effect(e->m);
    }
    if (const auto *p = std::get_if<ProjectiveSpec>(&spec)) {
        if (std::abs(p->n.norm() - 1) > kDefaultTolerance) {
            throw std::invalid_argument("Projective direction must be a unit vector.");
        }
        return Detector::projective(p->n);
    }
    const auto &a = std::get<AncillaSpec>(spec);
    return Detector::ancilla(a.dim, a.coupling, a.projector);
}

std::optional<ComplexMatrix> builtin_gate(std::string_view name, const std::vector<double> &params) {
    const bool rotation = name == "RX" || name == "RY" || name == "RZ";
    if (!builtin_names().count(std::string(name))) {
        return std::nullopt;
    }
    if (rotation != (params.size() == 1) || (!rotation && !params.empty())) {
        throw std::invalid_argument(rotation ? "Rotation gates take one angle." : "Gate takes no parameters.");
    }
    const Complex i{0, 1};
    if (rotation) {
        // exp(-i t sigma / 2)
        double c = std::cos(params[0] / 2);
        double s = std::sin(params[0] / 2);
        ComplexMatrix sigma = name == "RX" ? pauli::X() : (name == "RY" ? pauli::Y() : pauli::Z());
        return pauli::I() * Complex{c} - sigma * (i * s);
    }
    if (name == "I") {
        return pauli::I();
    }
    if (name == "X") {
        return pauli::X();
    }
    if (name == "Y") {
        return pauli::Y();
    }
    if (name == "Z") {
        return pauli::Z();
    }
    if (name == "H") {
        return (pauli::X() + pauli::Z()) * Complex{M_SQRT1_2};
    }
    if (name == "S") {
        return ComplexMatrix{{1, 0}, {0, i}};
    }
    if (name == "T") {
        return ComplexMatrix{{1, 0}, {0, std::polar(1.0, M_PI / 4)}};
    }
    ComplexMatrix m = ComplexMatrix::identity(4);
    if (name == "CNOT") {
        m(2, 2) = 0;
        m(3, 3) = 0;
        m(2, 3) = 1;
        m(3, 2) = 1;
    } else if (name == "CZ") {
        m(3, 3) = -1;
    } else {
        m(1, 1) = 0;
        m(2, 2) = 0;
        m(1, 2) = 1;
        m(2, 1) = 1;
    }
    return m;
}

}  // namespace bornv::dsl
