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
#include "sa/sym/expr.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "sa/errors.hpp"

namespace sa::sym {

namespace {

constexpr std::size_t kOpBlock = 1 << 16;

std::uint64_t kind_seed(Kind k) { return mix64(0x5a5a0000ULL + static_cast<std::uint64_t>(k)); }

int kind_rank(Kind k) { return static_cast<int>(k); }

}  // namespace

const char* kind_name(SymbolKind k) {
    switch (k) {
        case SymbolKind::state: return "state";
        case SymbolKind::parameter: return "parameter";
        case SymbolKind::input: return "input";
        case SymbolKind::input_derivative: return "input_derivative";
        case SymbolKind::auxiliary: return "auxiliary";
    }
    return "?";
}

int compare(Expr a, Expr b) {
    if (a == b) return 0;
    Kind ka = a.kind(), kb = b.kind();
    if (ka != kb) return kind_rank(ka) < kind_rank(kb) ? -1 : 1;
    switch (ka) {
        case Kind::constant: {
            const Rational& x = a.value();
            const Rational& y = b.value();
            if (x == y) return 0;
            return x < y ? -1 : 1;
        }
        case Kind::symbol: {
            Expr ba = a.base_input(), bb = b.base_input();
            if (int c = ba.name().compare(bb.name()); c != 0) return c < 0 ? -1 : 1;
            if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
            int c = a.name().compare(b.name());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        default: {
            if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
            auto oa = a.operands(), ob = b.operands();
            if (oa.size() != ob.size()) return oa.size() < ob.size() ? -1 : 1;
            for (std::size_t i = 0; i < oa.size(); ++i) {
                if (int c = compare(oa[i], ob[i]); c != 0) return c;
            }
            return 0;
        }
    }
}

Pool::Pool(std::size_t budget) : budget_(kUnlimited) {
    table_.assign(1024, nullptr);
    zero_ = num(0);
    one_ = num(1);
    budget_ = budget;
}

Pool::~Pool() = default;

const Expr* Pool::store_ops(std::span<const Expr> ops) {
    if (ops.empty()) return nullptr;
    if (op_used_ + ops.size() > op_capacity_) {
        std::size_t cap = std::max(kOpBlock, ops.size());
        op_blocks_.emplace_back(new Expr[cap]);
        op_capacity_ = cap;
        op_used_ = 0;
    }
    Expr* dst = op_blocks_.back().get() + op_used_;
    std::copy(ops.begin(), ops.end(), dst);
    op_used_ += ops.size();
    return dst;
}

void Pool::grow_table() {
    std::vector<const Node*> bigger(table_.size() * 2, nullptr);
    std::size_t mask = bigger.size() - 1;
    for (const Node* n : table_) {
        if (!n) continue;
        std::size_t i = n->hash & mask;
        while (bigger[i]) i = (i + 1) & mask;
        bigger[i] = n;
    }
    table_.swap(bigger);
}

Expr Pool::intern(Kind kind, std::span<const Expr> ops, std::uint32_t aux, std::uint64_t hash) {
    std::size_t mask = table_.size() - 1;
    std::size_t i = hash & mask;
    while (const Node* n = table_[i]) {
        if (n->hash == hash && n->kind == kind && n->nops == ops.size()) {
            bool same;
            if (kind == Kind::constant) {
                same = constants_[n->aux] == constants_[aux];
            } else if (kind == Kind::symbol) {
                same = n->aux == aux;
            } else {
                same = std::equal(ops.begin(), ops.end(), n->ops);
            }
            if (same) return Expr(n);
        }
        i = (i + 1) & mask;
    }
    if (nodes_.size() >= budget_) throw ResourceLimitExceeded(budget_, nodes_.size());
    std::uint64_t deps = 0;
    for (Expr o : ops) deps |= o.deps();
    if (kind == Kind::symbol) deps = std::uint64_t{1} << (aux % 64);
    Node node{kind, static_cast<std::uint32_t>(nodes_.size()), static_cast<std::uint32_t>(ops.size()), aux, hash, deps, this,
              store_ops(ops)};
    nodes_.push_back(node);
    const Node* stored = &nodes_.back();
    table_[i] = stored;
    if (++table_used_ * 2 > table_.size()) grow_table();
    return Expr(stored);
}

Expr Pool::intern_composite(Kind kind, std::span<const Expr> ops) {
    std::uint64_t h = kind_seed(kind);
    for (Expr o : ops) h = hash_combine(h, o.hash());
    return intern(kind, ops, 0, h);
}

Expr Pool::num(const Rational& q) {
    // Constants are deduplicated through the table; the scratch entry is dropped on a hit.
    constants_.push_back(q);
    std::uint32_t aux = static_cast<std::uint32_t>(constants_.size() - 1);
    std::uint64_t h = hash_combine(kind_seed(Kind::constant), hash_rational(q));
    std::size_t before = nodes_.size();
    Expr e;
    try {
        e = intern(Kind::constant, {}, aux, h);
    } catch (...) {
        constants_.pop_back();
        throw;
    }
    if (nodes_.size() == before) constants_.pop_back();
    return e;
}

Expr Pool::symbol(const std::string& name, SymbolKind kind) {
    if (auto it = symbol_by_name_.find(name); it != symbol_by_name_.end()) {
        std::uint64_t h = hash_combine(kind_seed(Kind::symbol), hash_string(name));
        return intern(Kind::symbol, {}, it->second, h);
    }
    symbols_.push_back(SymbolInfo{name, kind, 0, Expr()});
    std::uint32_t aux = static_cast<std::uint32_t>(symbols_.size() - 1);
    symbol_by_name_.emplace(name, aux);
    return intern(Kind::symbol, {}, aux, hash_combine(kind_seed(Kind::symbol), hash_string(name)));
}

std::optional<Expr> Pool::find_symbol(const std::string& name) const {
    auto it = symbol_by_name_.find(name);
    if (it == symbol_by_name_.end()) return std::nullopt;
    std::uint64_t h = hash_combine(kind_seed(Kind::symbol), hash_string(name));
    std::size_t mask = table_.size() - 1;
    for (std::size_t i = h & mask; table_[i]; i = (i + 1) & mask) {
        const Node* n = table_[i];
        if (n->kind == Kind::symbol && n->aux == it->second) return Expr(n);
    }
    return std::nullopt;
}

Expr Pool::input_derivative(Expr input, std::uint32_t order) {
    Expr base = input.base_input();
    order += input.order();
    if (order == 0) return base;
    std::string name = base.name() + "^(" + std::to_string(order) + ")";
    if (auto found = find_symbol(name)) return *found;
    symbols_.push_back(SymbolInfo{name, SymbolKind::input_derivative, order, base});
    std::uint32_t aux = static_cast<std::uint32_t>(symbols_.size() - 1);
    symbol_by_name_.emplace(name, aux);
    return intern(Kind::symbol, {}, aux, hash_combine(kind_seed(Kind::symbol), hash_string(name)));
}

void Pool::split_term(Expr t, Rational& coef, Expr& rest) {
    if (t.kind() == Kind::product && t.operands()[0].is_constant()) {
        auto ops = t.operands();
        coef = ops[0].value();
        rest = ops.size() == 2 ? ops[1] : intern_composite(Kind::product, ops.subspan(1));
        return;
    }
    coef = 1;
    rest = t;
}

Expr Pool::scaled(const Rational& c, Expr rest) {
    if (c == 1) return rest;
    std::vector<Expr> ops;
    ops.push_back(num(c));
    if (rest.kind() == Kind::product) {
        auto r = rest.operands();
        ops.insert(ops.end(), r.begin(), r.end());
    } else {
        ops.push_back(rest);
    }
    return intern_composite(Kind::product, ops);
}

Expr Pool::add(std::span<const Expr> xs) {
    Rational constant = 0;
    std::vector<std::pair<Expr, Rational>> terms;
    std::unordered_map<const Node*, std::size_t> index;
    auto push = [&](Expr t) {
        if (t.is_constant()) {
            constant += t.value();
            return;
        }
        Rational c;
        Expr rest;
        split_term(t, c, rest);
        auto [it, fresh] = index.emplace(rest.node(), terms.size());
        if (fresh) {
            terms.emplace_back(rest, c);
        } else {
            terms[it->second].second += c;
        }
    };
    for (Expr x : xs) {
        if (x.kind() == Kind::sum) {
            for (Expr o : x.operands()) push(o);
        } else {
            push(x);
        }
    }
    std::vector<Expr> out;
    out.reserve(terms.size() + 1);
    for (auto& [rest, c] : terms) {
        if (c != 0) out.push_back(scaled(c, rest));
    }
    std::sort(out.begin(), out.end(), ExprLess{});
    if (constant != 0) out.insert(out.begin(), num(constant));
    if (out.empty()) return zero_;
    if (out.size() == 1) return out[0];
    return intern_composite(Kind::sum, out);
}

Expr Pool::neg(Expr a) { return mul(num(-1), a); }

Expr Pool::sub(Expr a, Expr b) { return add(a, neg(b)); }

Expr Pool::div(Expr a, Expr b) { return mul(a, pow(b, -1)); }

Expr Pool::mul(std::span<const Expr> xs) {
    Rational coef = 1;
    std::vector<std::pair<Expr, Rational>> factors;
    std::unordered_map<const Node*, std::size_t> index;
    auto push = [&](Expr f) {
        if (f.is_constant()) {
            coef *= f.value();
            return;
        }
        Expr base = f;
        Rational k = 1;
        if (f.kind() == Kind::power && f.exponent().is_constant()) {
            base = f.base();
            k = f.exponent().value();
        }
        auto [it, fresh] = index.emplace(base.node(), factors.size());
        if (fresh) {
            factors.emplace_back(base, k);
        } else {
            factors[it->second].second += k;
        }
    };
    for (Expr x : xs) {
        if (x.kind() == Kind::product) {
            for (Expr o : x.operands()) push(o);
        } else {
            push(x);
        }
    }
    if (coef == 0) return zero_;
    std::vector<Expr> out;
    out.reserve(factors.size() + 1);
    for (auto& [base, k] : factors) {
        if (k == 0) continue;
        Expr p = pow(base, num(k));
        if (p.is_constant()) {
            coef *= p.value();
        } else if (p.kind() == Kind::product) {
            for (Expr o : p.operands()) {
                if (o.is_constant()) {
                    coef *= o.value();
                } else {
                    out.push_back(o);
                }
            }
        } else {
            out.push_back(p);
        }
    }
    if (coef == 0) return zero_;
    if (out.empty()) return num(coef);
    std::sort(out.begin(), out.end(), ExprLess{});
    if (out.size() == 1) {
        if (coef == 1) return out[0];
        if (out[0].kind() == Kind::sum) {
            std::vector<Expr> terms;
            for (Expr t : out[0].operands()) terms.push_back(mul(num(coef), t));
            return add(terms);
        }
    }
    if (coef != 1) out.insert(out.begin(), num(coef));
    return intern_composite(Kind::product, out);
}

Expr Pool::pow(Expr b, Expr e) {
    if (e.is_constant()) {
        const Rational& q = e.value();
        if (q == 0) {
            if (b.is_zero()) throw ZeroToZero();
            return one_;
        }
        if (q == 1) return b;
        if (b.is_zero() && q < 0) throw DivisionByZero();
        if (b.is_constant()) {
            if (is_integer(q)) return num(pow_rational(b.value(), static_cast<long>(numerator(q))));
            if (b.is_zero() || b.is_one()) return b;
            return intern_composite(Kind::power, std::array<Expr, 2>{b, e});
        }
        if (b.kind() == Kind::power) {
            Expr be = b.exponent();
            if (be.is_constant()) return pow(b.base(), num(be.value() * q));
            if (is_integer(q)) return intern_composite(Kind::power, std::array<Expr, 2>{b, e});
            return pow(b.base(), mul(be, e));
        }
        if (b.kind() == Kind::product) {
            std::vector<Expr> fs;
            for (Expr f : b.operands()) fs.push_back(pow(f, e));
            return mul(fs);
        }
        return intern_composite(Kind::power, std::array<Expr, 2>{b, e});
    }
    if (b.is_one()) return b;
    if (e.kind() == Kind::sum) {
        std::vector<Expr> fs;
        for (Expr t : e.operands()) fs.push_back(pow(b, t));
        return mul(fs);
    }
    if (e.kind() == Kind::product && e.operands()[0].is_constant() && is_integer(e.operands()[0].value())) {
        auto ops = e.operands();
        Expr rest = ops.size() == 2 ? ops[1] : intern_composite(Kind::product, ops.subspan(1));
        return pow(pow(b, rest), e.operands()[0]);
    }
    if (b.kind() == Kind::product) {
        std::vector<Expr> fs;
        for (Expr f : b.operands()) fs.push_back(pow(f, e));
        return mul(fs);
    }
    if (b.kind() == Kind::power) return pow(b.base(), mul(b.exponent(), e));
    return intern_composite(Kind::power, std::array<Expr, 2>{b, e});
}

Expr Pool::log(Expr a) {
    if (a.is_constant()) {
        if (a.value() <= 0) throw UnsupportedExpression("log of a non-positive constant");
        if (a.is_one()) return zero_;
        return intern_composite(Kind::log, std::array<Expr, 1>{a});
    }
    if (a.kind() == Kind::product && !(a.operands()[0].is_constant() && a.operands()[0].value() < 0)) {
        std::vector<Expr> ts;
        for (Expr f : a.operands()) ts.push_back(log(f));
        return add(ts);
    }
    if (a.kind() == Kind::power) return mul(a.exponent(), log(a.base()));
    return intern_composite(Kind::log, std::array<Expr, 1>{a});
}

Expr Pool::import(Expr e) {
    if (&e.pool() == this) return e;
    std::unordered_map<const Node*, Expr> memo;
    return import_rec(e, memo);
}

Expr Pool::import_rec(Expr e, std::unordered_map<const Node*, Expr>& memo) {
    if (auto it = memo.find(e.node()); it != memo.end()) return it->second;
    Expr out;
    switch (e.kind()) {
        case Kind::constant: out = num(e.value()); break;
        case Kind::symbol:
            if (e.order() > 0) {
                out = input_derivative(import_rec(e.base_input(), memo), e.order());
            } else {
                out = symbol(e.name(), e.symbol_kind());
            }
            break;
        default: {
            std::vector<Expr> ops;
            for (Expr o : e.operands()) ops.push_back(import_rec(o, memo));
            out = intern_composite(e.kind(), ops);
        }
    }
    memo.emplace(e.node(), out);
    return out;
}

}  // namespace sa::sym
