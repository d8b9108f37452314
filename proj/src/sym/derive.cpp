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
#include "sa/sym/derive.hpp"

#include <vector>

#include "sa/errors.hpp"

namespace sa::sym {

Derivation::Derivation(Pool& pool, Seed seed, std::uint64_t relevant)
    : pool_(pool), seed_(std::move(seed)), relevant_(relevant) {}

Expr Derivation::operator()(Expr e) { return apply(e); }

Expr Derivation::apply(Expr e) {
    if ((e.deps() & relevant_) == 0) return pool_.zero();
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr out;
    switch (e.kind()) {
        case Kind::constant: out = pool_.zero(); break;
        case Kind::symbol: out = seed_(e); break;
        case Kind::sum: {
            std::vector<Expr> ts;
            for (Expr o : e.operands()) {
                Expr d = apply(o);
                if (!d.is_zero()) ts.push_back(d);
            }
            out = pool_.add(ts);
            break;
        }
        case Kind::product: {
            auto ops = e.operands();
            std::vector<Expr> ts;
            std::vector<Expr> fs;
            for (std::size_t i = 0; i < ops.size(); ++i) {
                Expr d = apply(ops[i]);
                if (d.is_zero()) continue;
                fs.clear();
                for (std::size_t j = 0; j < ops.size(); ++j) fs.push_back(j == i ? d : ops[j]);
                ts.push_back(pool_.mul(fs));
            }
            out = pool_.add(ts);
            break;
        }
        case Kind::power: {
            Expr b = e.base(), x = e.exponent();
            Expr db = apply(b);
            if (x.is_constant()) {
                const Rational& k = x.value();
                out = db.is_zero() ? pool_.zero() : pool_.mul({pool_.num(k), pool_.pow(b, pool_.num(k - 1)), db});
                break;
            }
            Expr dx = apply(x);
            if (!db.is_zero() && !dx.is_zero())
                throw UnsupportedDerivative("base and exponent of a power both vary with the differentiation variable");
            if (!db.is_zero()) {
                out = pool_.mul({x, e, pool_.pow(b, -1), db});
            } else if (!dx.is_zero()) {
                out = pool_.mul({e, pool_.log(b), dx});
            } else {
                out = pool_.zero();
            }
            break;
        }
        case Kind::log: {
            Expr a = e.argument();
            Expr da = apply(a);
            out = da.is_zero() ? pool_.zero() : pool_.mul(da, pool_.pow(a, -1));
            break;
        }
    }
    memo_.emplace(e.node(), out);
    return out;
}

Expr diff(Expr e, Expr symbol) {
    Pool& pool = e.pool();
    Derivation d(pool, [&](Expr s) { return s == symbol ? pool.one() : pool.zero(); }, symbol_bit(symbol));
    return d(e);
}

}  // namespace sa::sym
