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
#include "sa/sym/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "sa/errors.hpp"

namespace sa::sym {

namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 24;

template <class T, class Ops>
T eval_tree(Expr e, std::unordered_map<const Node*, T>& memo, Ops& ops) {
    if (auto it = memo.find(e.node()); it != memo.end()) return it->second;
    T out{};
    switch (e.kind()) {
        case Kind::constant: out = ops.constant(e.value()); break;
        case Kind::symbol: out = ops.symbol(e); break;
        case Kind::sum: {
            out = ops.zero();
            for (Expr o : e.operands()) out = ops.add(out, eval_tree(o, memo, ops));
            break;
        }
        case Kind::product: {
            out = ops.one();
            for (Expr o : e.operands()) out = ops.mul(out, eval_tree(o, memo, ops));
            break;
        }
        case Kind::power: {
            T b = eval_tree(e.base(), memo, ops);
            if (e.exponent().is_constant()) {
                const Rational& k = e.exponent().value();
                if (!is_integer(k)) throw NonIntegerExponent();
                out = ops.pow(b, static_cast<std::int64_t>(numerator(k)));
            } else {
                out = ops.pow(b, ops.integer_exponent(eval_tree(e.exponent(), memo, ops)));
            }
            break;
        }
        case Kind::log: throw UnsupportedExpression("logarithm has no exact value");
    }
    memo.emplace(e.node(), out);
    return out;
}

struct RationalOps {
    const RationalAssignment& a;
    Rational constant(const Rational& q) { return q; }
    Rational symbol(Expr s) {
        auto it = a.find(s);
        if (it == a.end()) throw UnboundSymbol(s.name());
        return it->second;
    }
    Rational zero() { return 0; }
    Rational one() { return 1; }
    Rational add(const Rational& x, const Rational& y) { return x + y; }
    Rational mul(const Rational& x, const Rational& y) { return x * y; }
    Rational pow(const Rational& b, std::int64_t k) {
        if (b == 0 && k == 0) throw ZeroToZero();
        if (b == 0 && k < 0) throw PoleEncountered();
        return pow_rational(b, static_cast<long>(k));
    }
    std::int64_t integer_exponent(const Rational& x) {
        if (!is_integer(x) || abs(x) > kMaxExponent) throw NonIntegerExponent();
        return static_cast<std::int64_t>(numerator(x));
    }
};

struct ModOps {
    const ModAssignment& a;
    const PrimeField& f;
    std::uint64_t constant(const Rational& q) { return f.from_rational(q); }
    std::uint64_t symbol(Expr s) {
        auto it = a.find(s);
        if (it == a.end()) throw UnboundSymbol(s.name());
        return it->second % f.modulus();
    }
    std::uint64_t zero() { return 0; }
    std::uint64_t one() { return 1; }
    std::uint64_t add(std::uint64_t x, std::uint64_t y) { return f.add(x, y); }
    std::uint64_t mul(std::uint64_t x, std::uint64_t y) { return f.mul(x, y); }
    std::uint64_t pow(std::uint64_t b, std::int64_t k) { return f.pow_signed(b, k); }
    std::int64_t integer_exponent(std::uint64_t x) {
        std::int64_t v = f.balanced(x);
        if (v > kMaxExponent || v < -kMaxExponent) throw NonIntegerExponent();
        return v;
    }
};

}  // namespace

Rational eval_exact(Expr e, const RationalAssignment& a) {
    std::unordered_map<const Node*, Rational> memo;
    RationalOps ops{a};
    return eval_tree(e, memo, ops);
}

std::uint64_t eval_exact(Expr e, const ModAssignment& a, const PrimeField& field) {
    std::unordered_map<const Node*, std::uint64_t> memo;
    ModOps ops{a, field};
    return eval_tree(e, memo, ops);
}

ModEvaluator::ModEvaluator(const PrimeField& field, Sampler symbol_value, Sampler atom_value)
    : field_(field), symbol_value_(std::move(symbol_value)), atom_value_(std::move(atom_value)) {}

std::uint64_t ModEvaluator::operator()(Expr e) {
    ensure(std::span<const Expr>(&e, 1));
    return val_[e.id()];
}

void ModEvaluator::evaluate(std::span<const Expr> roots, std::vector<std::uint64_t>& out) {
    ensure(roots);
    out.resize(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) out[i] = val_[roots[i].id()];
}

void ModEvaluator::ensure(std::span<const Expr> roots) {
    std::size_t n = roots.empty() ? 0 : roots[0].pool().size();
    if (done_.size() < n) {
        done_.resize(n, 0);
        val_.resize(n, 0);
    }
    order_.clear();
    for (Expr r : roots) {
        if (done_[r.id()]) continue;
        stack_.push_back(r.node());
        done_[r.id()] = 2;
    }
    while (!stack_.empty()) {
        const Node* x = stack_.back();
        stack_.pop_back();
        order_.push_back(x);
        for (std::uint32_t i = 0; i < x->nops; ++i) {
            const Node* c = x->ops[i].node();
            if (done_[c->id]) continue;
            done_[c->id] = 2;
            stack_.push_back(c);
        }
    }
    std::sort(order_.begin(), order_.end(), [](const Node* a, const Node* b) { return a->id < b->id; });
    try {
        for (const Node* x : order_) {
            val_[x->id] = compute(Expr(x));
            done_[x->id] = 1;
        }
    } catch (...) {
        for (const Node* x : order_) {
            if (done_[x->id] == 2) done_[x->id] = 0;
        }
        throw;
    }
}

std::uint64_t ModEvaluator::compute(Expr e) {
    switch (e.kind()) {
        case Kind::constant: return field_.from_rational(e.value());
        case Kind::symbol: return symbol_value_(e) % field_.modulus();
        case Kind::sum: {
            std::uint64_t s = 0;
            for (Expr o : e.operands()) s = field_.add(s, val_[o.id()]);
            return s;
        }
        case Kind::product: {
            std::uint64_t s = 1;
            for (Expr o : e.operands()) s = field_.mul(s, val_[o.id()]);
            return s;
        }
        case Kind::power: {
            Expr x = e.exponent();
            if (!x.is_constant()) return atom_value_(e) % field_.modulus();
            const Rational& k = x.value();
            if (!is_integer(k)) throw UnsupportedExpression("fractional exponent in generic evaluation");
            return field_.pow_signed(val_[e.base().id()], static_cast<std::int64_t>(numerator(k)));
        }
        case Kind::log: return atom_value_(e) % field_.modulus();
    }
    return 0;
}

}  // namespace sa::sym
