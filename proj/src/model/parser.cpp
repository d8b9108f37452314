/* Copyright 2026 The sa Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#include "sa/model/parser.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sa/errors.hpp"
#include "sa/sym/print.hpp"

namespace sa::model {

using sym::SymbolKind;

namespace {

enum class Tok { ident, number, op, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(const std::string& s, std::size_t line, std::size_t col0) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Tok::ident, s.substr(i, j - i), col0 + i});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '.') {
                ++j;
                if (j >= s.size() || !std::isdigit(static_cast<unsigned char>(s[j])))
                    throw SyntaxError("malformed number", line, col0 + i);
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            out.push_back({Tok::number, s.substr(i, j - i), col0 + i});
            i = j;
        } else if (std::string("+-*/^()=',").find(c) != std::string::npos) {
            out.push_back({Tok::op, std::string(1, c), col0 + i});
            ++i;
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col0 + i);
        }
    }
    out.push_back({Tok::end, "", col0 + s.size()});
    return out;
}

Rational number_value(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(sym::Integer(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    sym::Integer den = 1;
    for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
    return Rational(sym::Integer(digits), den);
}

using Resolver = std::function<Expr(const std::string&, std::size_t)>;

class ExprParser {
public:
    ExprParser(Pool& pool, std::vector<Token> toks, std::size_t line, Resolver resolve)
        : pool_(pool), toks_(std::move(toks)), line_(line), resolve_(std::move(resolve)) {}

    Expr parse_all() {
        Expr e = sum();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool accept(const char* op) {
        if (peek().kind == Tok::op && peek().text == op) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const char* op) {
        if (!accept(op)) fail(std::string("expected '") + op + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, peek().column); }

    Expr sum() {
        std::vector<Expr> terms{product()};
        for (;;) {
            if (accept("+")) {
                terms.push_back(product());
            } else if (accept("-")) {
                terms.push_back(pool_.neg(product()));
            } else {
                return pool_.add(terms);
            }
        }
    }

    Expr product() {
        Expr acc = unary();
        for (;;) {
            if (accept("*")) {
                acc = pool_.mul(acc, unary());
            } else if (peek().kind == Tok::op && peek().text == "/") {
                std::size_t col = peek().column;
                ++pos_;
                Expr d = unary();
                if (d.is_zero()) throw SyntaxError("division by zero", line_, col);
                acc = pool_.div(acc, d);
            } else {
                return acc;
            }
        }
    }

    Expr unary() {
        if (accept("-")) return pool_.neg(unary());
        if (accept("+")) return unary();
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (peek().kind != Tok::op || peek().text != "^") return base;
        std::size_t col = peek().column;
        ++pos_;
        Expr ex = unary();
        if (!ex.is_constant()) {
            for (Expr s : sym::free_symbols(ex)) {
                if (s.symbol_kind() != SymbolKind::parameter)
                    throw SyntaxError("symbolic exponent may only involve parameters, found " + s.name(), line_, col);
            }
        }
        if (base.is_zero() && ex.is_constant() && ex.value() <= 0) throw SyntaxError("zero to a non-positive power", line_, col);
        return pool_.pow(base, ex);
    }

    Expr atom() {
        const Token& t = peek();
        if (t.kind == Tok::number) {
            ++pos_;
            return pool_.num(number_value(t.text));
        }
        if (t.kind == Tok::ident) {
            ++pos_;
            if (t.text == "log") {
                expect("(");
                Expr a = sum();
                expect(")");
                return pool_.log(a);
            }
            return resolve_(t.text, t.column);
        }
        if (accept("(")) {
            Expr e = sum();
            expect(")");
            return e;
        }
        fail(t.kind == Tok::end ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }

    Pool& pool_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
    Resolver resolve_;
};

struct Line {
    std::size_t number;
    std::string keyword;
    std::string rest;
    std::size_t rest_column;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::size_t i = 0;
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        if (i == raw.size()) continue;
        std::size_t j = i;
        while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
        std::size_t k = j;
        while (k < raw.size() && std::isspace(static_cast<unsigned char>(raw[k]))) ++k;
        std::string rest = raw.substr(k);
        while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();
        out.push_back({n, raw.substr(i, j - i), rest, k + 1});
    }
    return out;
}

std::vector<std::pair<std::string, std::size_t>> name_list(const Line& l) {
    auto toks = tokenize(l.rest, l.number, l.rest_column);
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    for (;;) {
        if (toks[i].kind != Tok::ident) throw SyntaxError("expected a name", l.number, toks[i].column);
        if (toks[i].text == "log") throw SyntaxError("'log' is reserved", l.number, toks[i].column);
        out.emplace_back(toks[i].text, toks[i].column);
        ++i;
        if (toks[i].kind == Tok::end) return out;
        if (toks[i].kind != Tok::op || toks[i].text != ",") throw SyntaxError("expected ','", l.number, toks[i].column);
        ++i;
    }
}

// "name = rest"; returns the name and the column where rest starts.
std::pair<std::string, std::size_t> split_assignment(const Line& l, std::string& rhs, bool prime) {
    auto eq = l.rest.find('=');
    if (eq == std::string::npos) throw SyntaxError("expected '='", l.number, l.rest_column + l.rest.size());
    auto toks = tokenize(l.rest.substr(0, eq), l.number, l.rest_column);
    std::size_t i = 0;
    if (toks[i].kind != Tok::ident) throw SyntaxError("expected a name", l.number, toks[i].column);
    auto name = toks[i].text;
    ++i;
    if (prime) {
        if (toks[i].kind != Tok::op || toks[i].text != "'") throw SyntaxError("expected '''", l.number, toks[i].column);
        ++i;
    }
    if (toks[i].kind != Tok::end) throw SyntaxError("unexpected '" + toks[i].text + "'", l.number, toks[i].column);
    rhs = l.rest.substr(eq + 1);
    return {name, l.rest_column + eq + 1};
}

Expr parse_in(Pool& pool, const std::string& text, std::size_t line, std::size_t col, Resolver resolve) {
    ExprParser p(pool, tokenize(text, line, col), line, std::move(resolve));
    return p.parse_all();
}

Rational parse_signed_rational(const Line& l, const std::string& text, std::size_t col) {
    // Accepts -p, p/q, decimals; anything that folds to a constant.
    Pool scratch;
    Expr e = parse_in(scratch, text, l.number, col, [&](const std::string& n, std::size_t c) -> Expr {
        throw SyntaxError("known value must be a number, found " + n, l.number, c);
    });
    return e.value();
}

}  // namespace

const LetDefinition* ModelSource::find_let(const std::string& n) const {
    for (auto& l : lets) {
        if (l.symbol.name() == n) return &l;
    }
    return nullptr;
}

ModelSource parse_source(const std::string& text) {
    ModelSource src;
    src.pool = std::make_shared<Pool>();
    Pool& pool = *src.pool;
    auto lines = split_lines(text);

    std::map<std::string, std::size_t> declared_at;
    auto declare = [&](const std::string& n, std::size_t line) {
        if (n == "log") throw SyntaxError("'log' is reserved", line, 1);
        if (auto [it, fresh] = declared_at.emplace(n, line); !fresh)
            throw DuplicateDeclaration("line " + std::to_string(line) + ": " + n + " already declared on line " +
                                       std::to_string(it->second));
    };

    // Pass 1: declarations.
    bool have_name = false;
    for (auto& l : lines) {
        if (l.keyword == "model") {
            auto names = name_list(l);
            if (names.size() != 1) throw SyntaxError("expected a single model name", l.number, l.rest_column);
            if (have_name) throw DuplicateDeclaration("line " + std::to_string(l.number) + ": second model line");
            src.name = names[0].first;
            have_name = true;
        } else if (l.keyword == "states" || l.keyword == "params" || l.keyword == "inputs") {
            for (auto& [n, c] : name_list(l)) {
                declare(n, l.number);
                if (l.keyword == "states") {
                    src.states.push_back(pool.symbol(n, SymbolKind::state));
                } else if (l.keyword == "params") {
                    src.params.push_back(pool.symbol(n, SymbolKind::parameter));
                } else {
                    src.inputs.push_back({pool.symbol(n, SymbolKind::input), std::nullopt});
                }
            }
        } else if (l.keyword == "known") {
            std::string rhs;
            auto [n, col] = split_assignment(l, rhs, false);
            declare(n, l.number);
            src.known_constants.emplace_back(pool.symbol(n, SymbolKind::parameter), parse_signed_rational(l, rhs, col));
        } else if (l.keyword == "let") {
            std::string rhs;
            auto [n, col] = split_assignment(l, rhs, false);
            declare(n, l.number);
            src.lets.push_back({pool.symbol(n, SymbolKind::auxiliary), Expr{}});
        } else if (l.keyword != "ode" && l.keyword != "output" && l.keyword != "input_class") {
            throw SyntaxError("unknown statement '" + l.keyword + "'", l.number, 1);
        }
    }
    if (!have_name) throw SyntaxError("missing model line", lines.empty() ? 1 : lines.front().number, 1);

    // Pass 2: definitions.  A let may only use lets defined above it.
    std::set<std::string> lets_ready;
    auto resolver = [&](std::size_t line) {
        return [&, line](const std::string& n, std::size_t col) -> Expr {
            auto s = pool.find_symbol(n);
            if (!s || !declared_at.count(n))
                throw UndeclaredSymbol("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + n +
                                       " is not declared");
            if (s->symbol_kind() == SymbolKind::auxiliary && !lets_ready.count(n))
                throw UndeclaredSymbol("line " + std::to_string(line) + ": let " + n + " used before its definition");
            return *s;
        };
    };
    std::map<std::string, Expr> odes;
    std::size_t let_index = 0;
    for (auto& l : lines) {
        if (l.keyword == "let") {
            std::string rhs;
            auto [n, col] = split_assignment(l, rhs, false);
            src.lets[let_index++].value = parse_in(pool, rhs, l.number, col, resolver(l.number));
            lets_ready.insert(n);
        } else if (l.keyword == "ode") {
            std::string rhs;
            auto [n, col] = split_assignment(l, rhs, true);
            auto s = pool.find_symbol(n);
            if (!s || s->symbol_kind() != SymbolKind::state || !declared_at.count(n))
                throw UndeclaredSymbol("line " + std::to_string(l.number) + ": " + n + " is not a declared state");
            if (odes.count(n)) throw DuplicateDeclaration("line " + std::to_string(l.number) + ": second equation for " + n);
            odes.emplace(n, Expr{});
            odes[n] = parse_in(pool, rhs, l.number, col, resolver(l.number));
        } else if (l.keyword == "output") {
            src.outputs.push_back(parse_in(pool, l.rest, l.number, l.rest_column, resolver(l.number)));
        } else if (l.keyword == "input_class") {
            auto toks = tokenize(l.rest, l.number, l.rest_column);
            if (toks.size() != 4 || toks[0].kind != Tok::ident || toks[1].text != "zero_above" ||
                toks[2].kind != Tok::number || toks[2].text.find('.') != std::string::npos)
                throw SyntaxError("expected 'input_class <input> zero_above <k>'", l.number, l.rest_column);
            bool found = false;
            for (auto& in : src.inputs) {
                if (in.symbol.name() == toks[0].text) {
                    if (in.zero_above) throw DuplicateDeclaration("line " + std::to_string(l.number) + ": second input_class");
                    in.zero_above = static_cast<std::uint32_t>(std::stoul(toks[2].text));
                    found = true;
                }
            }
            if (!found) throw UndeclaredSymbol("line " + std::to_string(l.number) + ": " + toks[0].text + " is not a declared input");
        }
    }
    for (Expr s : src.states) {
        auto it = odes.find(s.name());
        if (it == odes.end()) throw ArityMismatch("no equation for state " + s.name());
        src.dynamics.push_back(it->second);
    }
    return src;
}

Expr parse_expression(const ModelSource& src, const std::string& text) {
    Pool& pool = *src.pool;
    auto known = [&](const std::string& n) {
        for (auto* g : {&src.states, &src.params}) {
            for (Expr s : *g) {
                if (s.name() == n) return true;
            }
        }
        for (auto& in : src.inputs) {
            if (in.symbol.name() == n) return true;
        }
        for (auto& [s, v] : src.known_constants) {
            if (s.name() == n) return true;
        }
        return src.find_let(n) != nullptr;
    };
    return parse_in(pool, text, 1, 1, [&](const std::string& n, std::size_t col) -> Expr {
        if (!known(n)) throw UndeclaredSymbol("column " + std::to_string(col) + ": " + n + " is not declared");
        return *pool.find_symbol(n);
    });
}

OdeModel instantiate(const ModelSource& src, const std::vector<std::string>& inputs,
                     const std::vector<std::string>& outputs) {
    std::set<std::string> selected(inputs.begin(), inputs.end());
    if (selected.size() != inputs.size()) throw UnknownVariant("input listed twice");
    for (auto& n : selected) {
        bool declared = src.find_let(n) != nullptr;
        for (auto& in : src.inputs) declared |= in.symbol.name() == n;
        if (!declared) throw UnknownVariant(n + " is neither an input nor a let of model " + src.name);
    }
    auto is_selected = [&](Expr s) { return inputs.empty() ? s.symbol_kind() == SymbolKind::input : selected.count(s.name()) > 0; };

    sym::Bindings inline_sel, inline_all;
    for (auto& l : src.lets) {
        inline_all.emplace(l.symbol, sym::substitute(l.value, inline_all));
        if (!is_selected(l.symbol)) inline_sel.emplace(l.symbol, sym::substitute(l.value, inline_sel));
    }
    std::vector<Expr> outs_src;
    if (outputs.empty()) {
        outs_src = src.outputs;
    } else {
        for (auto& o : outputs) outs_src.push_back(parse_expression(src, o));
    }
    std::vector<Expr> exprs = src.dynamics;
    exprs.insert(exprs.end(), outs_src.begin(), outs_src.end());
    std::vector<Expr> now = sym::substitute(exprs, inline_sel);
    std::set<std::string> present_all, present_now;
    for (Expr s : sym::free_symbols(sym::substitute(exprs, inline_all))) present_all.insert(s.name());
    for (Expr s : sym::free_symbols(now)) present_now.insert(s.name());
    auto keep_param = [&](Expr s) { return present_now.count(s.name()) || !present_all.count(s.name()); };

    OdeModel m;
    m.name = src.name;
    m.pool = std::make_shared<Pool>();
    Pool& pool = *m.pool;
    for (Expr s : src.states) m.states.push_back(pool.symbol(s.name(), SymbolKind::state));
    for (Expr s : src.params) {
        if (keep_param(s)) m.params.push_back(pool.symbol(s.name(), SymbolKind::parameter));
    }
    for (auto& in : src.inputs) {
        if (is_selected(in.symbol)) {
            m.inputs.push_back({pool.symbol(in.symbol.name(), SymbolKind::input), in.zero_above});
        } else if (keep_param(in.symbol)) {
            m.params.push_back(pool.symbol(in.symbol.name(), SymbolKind::parameter));
        }
    }
    for (auto& l : src.lets) {
        if (!inputs.empty() && is_selected(l.symbol)) m.inputs.push_back({pool.symbol(l.symbol.name(), SymbolKind::input), std::nullopt});
    }
    for (auto& [s, v] : src.known_constants) m.known_constants.emplace_back(pool.symbol(s.name(), SymbolKind::parameter), v);
    for (std::size_t k = 0; k < now.size(); ++k) {
        Expr e = pool.import(now[k]);
        (k < src.dynamics.size() ? m.dynamics : m.outputs).push_back(e);
    }
    validate(m);
    return m;
}

OdeModel parse_model(const std::string& text) { return instantiate(parse_source(text)); }

namespace {

void render_header(std::ostringstream& o, const std::string& name, const std::vector<Expr>& states,
                   const std::vector<Expr>& params, const std::vector<InputSpec>& inputs,
                   const std::vector<std::pair<Expr, Rational>>& known) {
    auto list = [&](const char* kw, const std::vector<Expr>& xs) {
        if (xs.empty()) return;
        o << kw;
        for (std::size_t i = 0; i < xs.size(); ++i) o << (i ? ", " : " ") << xs[i].name();
        o << "\n";
    };
    o << "model " << name << "\n";
    list("states", states);
    list("params", params);
    std::vector<Expr> ins;
    for (auto& in : inputs) ins.push_back(in.symbol);
    list("inputs", ins);
    for (auto& [s, v] : known) o << "known " << s.name() << " = " << sym::to_string(v) << "\n";
    for (auto& in : inputs) {
        if (in.zero_above) o << "input_class " << in.symbol.name() << " zero_above " << *in.zero_above << "\n";
    }
}

void render_body(std::ostringstream& o, const std::vector<Expr>& states, const std::vector<Expr>& dynamics,
                 const std::vector<Expr>& outputs) {
    for (Expr y : outputs) o << "output " << sym::to_string(y) << "\n";
    for (std::size_t k = 0; k < states.size(); ++k) o << "ode " << states[k].name() << "' = " << sym::to_string(dynamics[k]) << "\n";
}

}  // namespace

std::string render(const ModelSource& src) {
    std::ostringstream o;
    render_header(o, src.name, src.states, src.params, src.inputs, src.known_constants);
    for (auto& l : src.lets) o << "let " << l.symbol.name() << " = " << sym::to_string(l.value) << "\n";
    render_body(o, src.states, src.dynamics, src.outputs);
    return o.str();
}

std::string render(const OdeModel& m) {
    std::ostringstream o;
    render_header(o, m.name, m.states, m.params, m.inputs, m.known_constants);
    render_body(o, m.states, m.dynamics, m.outputs);
    return o.str();
}

}  // namespace sa::model
