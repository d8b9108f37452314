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
#include "sa/sym/transform.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace sa::sym {

namespace {

Expr rebuild(Pool& pool, Expr e, std::span<const Expr> ops) {
    switch (e.kind()) {
        case Kind::sum: return pool.add(ops);
        case Kind::product: return pool.mul(ops);
        case Kind::power: return pool.pow(ops[0], ops[1]);
        case Kind::log: return pool.log(ops[0]);
        default: return e;
    }
}

class Substituter {
public:
    Substituter(const Bindings& b) : bindings_(b) {
        for (auto& [s, v] : b) mask_ |= symbol_bit(s);
    }

    Expr operator()(Expr e) {
        if ((e.deps() & mask_) == 0) return e;
        if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
        Expr out = e;
        if (e.is_symbol()) {
            if (auto it = bindings_.find(e); it != bindings_.end()) out = it->second;
        } else if (!e.is_constant()) {
            std::vector<Expr> ops;
            bool changed = false;
            for (Expr o : e.operands()) {
                ops.push_back((*this)(o));
                changed |= ops.back() != o;
            }
            if (changed) out = rebuild(e.pool(), e, ops);
        }
        memo_.emplace(e.node(), out);
        return out;
    }

private:
    const Bindings& bindings_;
    std::uint64_t mask_ = 0;
    std::unordered_map<const Node*, Expr> memo_;
};

void collect_symbols(Expr e, std::unordered_set<const Node*>& seen, std::vector<Expr>& out) {
    std::vector<Expr> stack{e};
    while (!stack.empty()) {
        Expr x = stack.back();
        stack.pop_back();
        if (!seen.insert(x.node()).second) continue;
        if (x.is_symbol()) {
            out.push_back(x);
            continue;
        }
        for (Expr o : x.operands()) stack.push_back(o);
    }
}

}  // namespace

Expr substitute(Expr e, const Bindings& bindings) {
    if (bindings.empty()) return e;
    Substituter s(bindings);
    return s(e);
}

std::vector<Expr> substitute(std::span<const Expr> es, const Bindings& bindings) {
    std::vector<Expr> out;
    Substituter s(bindings);
    for (Expr e : es) out.push_back(bindings.empty() ? e : s(e));
    return out;
}

std::vector<Expr> free_symbols(Expr e) { return free_symbols(std::span<const Expr>(&e, 1)); }

std::vector<Expr> free_symbols(std::span<const Expr> es) {
    std::unordered_set<const Node*> seen;
    std::vector<Expr> out;
    for (Expr e : es) collect_symbols(e, seen, out);
    std::sort(out.begin(), out.end(), ExprLess{});
    return out;
}

bool depends_on(Expr e, Expr symbol) {
    if ((e.deps() & symbol_bit(symbol)) == 0) return false;
    auto syms = free_symbols(e);
    return std::find(syms.begin(), syms.end(), symbol) != syms.end();
}

Expr canonicalize(Expr e) {
    std::unordered_map<const Node*, Expr> memo;
    auto go = [&](auto&& self, Expr x) -> Expr {
        if (x.is_constant() || x.is_symbol()) return x;
        if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
        std::vector<Expr> ops;
        for (Expr o : x.operands()) ops.push_back(self(self, o));
        Expr out = rebuild(x.pool(), x, ops);
        memo.emplace(x.node(), out);
        return out;
    };
    return go(go, e);
}

Expr expand(Expr e) {
    std::unordered_map<const Node*, Expr> memo;
    auto terms_of = [](Expr x) {
        if (x.kind() == Kind::sum) return std::vector<Expr>(x.operands().begin(), x.operands().end());
        return std::vector<Expr>{x};
    };
    auto times = [&](Pool& pool, Expr a, Expr b) {
        std::vector<Expr> out;
        for (Expr s : terms_of(a)) {
            for (Expr t : terms_of(b)) out.push_back(pool.mul(s, t));
        }
        return pool.add(out);
    };
    auto go = [&](auto&& self, Expr x) -> Expr {
        if (x.is_constant() || x.is_symbol()) return x;
        if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
        Pool& pool = x.pool();
        Expr out;
        switch (x.kind()) {
            case Kind::sum: {
                std::vector<Expr> ops;
                for (Expr o : x.operands()) ops.push_back(self(self, o));
                out = pool.add(ops);
                break;
            }
            case Kind::product: {
                out = pool.one();
                for (Expr o : x.operands()) out = times(pool, out, self(self, o));
                break;
            }
            case Kind::power: {
                Expr b = self(self, x.base());
                Expr k = x.exponent();
                if (k.is_constant() && is_integer(k.value()) && k.value() > 0 && b.kind() == Kind::sum) {
                    out = pool.one();
                    for (long i = 0; i < static_cast<long>(numerator(k.value())); ++i) out = times(pool, out, b);
                } else {
                    out = pool.pow(b, self(self, k));
                }
                break;
            }
            default: out = pool.log(self(self, x.argument()));
        }
        memo.emplace(x.node(), out);
        return out;
    };
    return go(go, e);
}

bool structurally_equal(Expr a, Expr b) {
    if (&a.pool() == &b.pool()) return a == b;
    if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Kind::constant: return a.value() == b.value();
        case Kind::symbol: return a.name() == b.name();
        default: {
            auto oa = a.operands(), ob = b.operands();
            if (oa.size() != ob.size()) return false;
            for (std::size_t i = 0; i < oa.size(); ++i) {
                if (!structurally_equal(oa[i], ob[i])) return false;
            }
            return true;
        }
    }
}

std::size_t dag_size(std::span<const Expr> roots) {
    std::unordered_set<const Node*> seen;
    std::vector<Expr> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        Expr x = stack.back();
        stack.pop_back();
        if (!seen.insert(x.node()).second) continue;
        for (Expr o : x.operands()) stack.push_back(o);
    }
    return seen.size();
}

}  // namespace sa::sym
