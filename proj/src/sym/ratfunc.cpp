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
#include "sa/sym/ratfunc.hpp"

#include <algorithm>

#include "sa/errors.hpp"
#include "sa/sym/transform.hpp"

namespace sa::sym {

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b, int sign = 1) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, sign * b[j].second);
            ++j;
        } else {
            int e = a[i].second + sign * b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

int mono_exp(const Monomial& m, std::uint32_t atom) {
    for (auto& [a, e] : m) {
        if (a == atom) return e;
    }
    return 0;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
    for (auto& [a, e] : d) {
        if (mono_exp(m, a) < e) return false;
    }
    return true;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
    Monomial out;
    for (auto& [x, e] : a) {
        int f = std::min(e, mono_exp(b, x));
        if (f > 0) out.emplace_back(x, f);
    }
    return out;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (auto& [x, e] : b) {
        int f = mono_exp(a, x);
        if (e > f) {
            auto it = std::find_if(out.begin(), out.end(), [&](auto& p) { return p.first == x; });
            if (it != out.end()) {
                it->second = e;
            } else {
                out.emplace_back(x, e);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly poly_from_mono(const Monomial& m) { return Poly{{m, Rational(1)}}; }

Poly poly_mono_mul(const Poly& p, const Monomial& m) {
    if (m.empty()) return p;
    Poly out;
    for (auto& [mm, c] : p) out.emplace(mono_mul(mm, m), c);
    return out;
}

Poly poly_mono_div(const Poly& p, const Monomial& m) {
    if (m.empty()) return p;
    Poly out;
    for (auto& [mm, c] : p) out.emplace(mono_mul(mm, m, -1), c);
    return out;
}

Poly poly_pow(const Poly& p, int k) {
    Poly out{{Monomial{}, Rational(1)}};
    for (int i = 0; i < k; ++i) out = poly_mul(out, p);
    return out;
}

Monomial poly_content(const Poly& p) {
    if (p.empty()) return {};
    Monomial g = p.begin()->first;
    for (auto& [m, c] : p) {
        g = mono_gcd(g, m);
        if (g.empty()) break;
    }
    return g;
}

}  // namespace

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) return false;
        if (i == a.size()) return true;
        if (a[i].first != b[j].first) return a[i].first > b[j].first;
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i;
        ++j;
    }
    return false;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (auto& [m, c] : b) {
        auto [it, fresh] = out.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (auto& [ma, ca] : a) {
        for (auto& [mb, cb] : b) {
            Rational c = ca * cb;
            auto [it, fresh] = out.emplace(mono_mul(ma, mb), c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
        }
    }
    return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
    if (c == 0) return {};
    Poly out;
    for (auto& [m, x] : a) out.emplace(m, x * c);
    return out;
}

std::optional<Poly> poly_divide(const Poly& p, const Poly& f) {
    if (f.empty()) throw DivisionByZero();
    Poly r = p, q;
    const auto& [lf, cf] = *f.rbegin();
    while (!r.empty()) {
        const auto& [lr, cr] = *r.rbegin();
        if (!mono_divides(lf, lr)) return std::nullopt;
        Monomial t = mono_mul(lr, lf, -1);
        Rational c = cr / cf;
        q.emplace(t, c);
        Poly sub;
        for (auto& [m, x] : f) sub.emplace(mono_mul(m, t), -x * c);
        r = poly_add(r, sub);
    }
    return q;
}

std::optional<std::uint32_t> RatContext::atom_id(Expr e) const {
    auto it = atom_index_.find(e.node());
    if (it == atom_index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t RatContext::intern_atom(Expr e) {
    auto [it, fresh] = atom_index_.emplace(e.node(), static_cast<std::uint32_t>(atoms_.size()));
    if (fresh) atoms_.push_back(e);
    return it->second;
}

RatFunc RatContext::constant(const Rational& q) const {
    RatFunc r;
    if (q != 0) r.num.emplace(Monomial{}, q);
    return r;
}

void RatContext::normalize(RatFunc& r) {
    if (r.num.empty()) {
        r.dmono.clear();
        r.dfactors.clear();
        return;
    }
    for (auto& [f, k] : r.dfactors) {
        while (k > 0) {
            auto q = poly_divide(r.num, f);
            if (!q) break;
            r.num = std::move(*q);
            --k;
        }
    }
    r.dfactors.erase(std::remove_if(r.dfactors.begin(), r.dfactors.end(), [](auto& p) { return p.second == 0; }),
                     r.dfactors.end());
    Monomial g = mono_gcd(poly_content(r.num), r.dmono);
    if (!g.empty()) {
        r.num = poly_mono_div(r.num, g);
        r.dmono = mono_mul(r.dmono, g, -1);
    }
}

RatFunc RatContext::add(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFunc out;
    out.dmono = mono_lcm(a.dmono, b.dmono);
    out.dfactors = a.dfactors;
    for (auto& [f, k] : b.dfactors) {
        auto it = std::find_if(out.dfactors.begin(), out.dfactors.end(), [&](auto& p) { return p.first == f; });
        if (it == out.dfactors.end()) {
            out.dfactors.emplace_back(f, k);
        } else {
            it->second = std::max(it->second, k);
        }
    }
    auto lift = [&](const RatFunc& x) {
        Poly p = poly_mono_mul(x.num, mono_mul(out.dmono, x.dmono, -1));
        for (auto& [f, k] : out.dfactors) {
            int have = 0;
            for (auto& [g, m] : x.dfactors) {
                if (g == f) have = m;
            }
            if (k > have) p = poly_mul(p, poly_pow(f, k - have));
        }
        return p;
    };
    out.num = poly_add(lift(a), lift(b));
    normalize(out);
    return out;
}

RatFunc RatContext::neg(const RatFunc& a) {
    RatFunc out = a;
    out.num = poly_scale(a.num, -1);
    return out;
}

RatFunc RatContext::mul(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc{};
    RatFunc out;
    out.num = poly_mul(a.num, b.num);
    out.dmono = mono_mul(a.dmono, b.dmono);
    out.dfactors = a.dfactors;
    for (auto& [f, k] : b.dfactors) {
        auto it = std::find_if(out.dfactors.begin(), out.dfactors.end(), [&](auto& p) { return p.first == f; });
        if (it == out.dfactors.end()) {
            out.dfactors.emplace_back(f, k);
        } else {
            it->second += k;
        }
    }
    normalize(out);
    return out;
}

RatFunc RatContext::inv(const RatFunc& a) {
    if (a.is_zero()) throw DivisionByZero();
    RatFunc out;
    out.num = poly_from_mono(a.dmono);
    for (auto& [f, k] : a.dfactors) out.num = poly_mul(out.num, poly_pow(f, k));
    Monomial m = poly_content(a.num);
    Poly rest = poly_mono_div(a.num, m);
    Rational lead = rest.rbegin()->second;
    rest = poly_scale(rest, 1 / lead);
    out.num = poly_scale(out.num, 1 / lead);
    out.dmono = m;
    if (!(rest.size() == 1 && rest.begin()->first.empty())) out.dfactors.emplace_back(std::move(rest), 1);
    normalize(out);
    return out;
}

RatFunc RatContext::pow(const RatFunc& a, long k) {
    if (k < 0) return pow(inv(a), -k);
    RatFunc out = constant(1), base = a;
    while (k) {
        if (k & 1) out = mul(out, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return out;
}

RatFunc RatContext::from_expr(Expr e) {
    std::unordered_map<const Node*, RatFunc> memo;
    auto go = [&](auto&& self, Expr x) -> RatFunc {
        if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
        RatFunc out;
        switch (x.kind()) {
            case Kind::constant: out = constant(x.value()); break;
            case Kind::sum: {
                for (Expr o : x.operands()) out = add(out, self(self, o));
                break;
            }
            case Kind::product: {
                out = constant(1);
                for (Expr o : x.operands()) out = mul(out, self(self, o));
                break;
            }
            case Kind::power: {
                Expr k = x.exponent();
                if (k.is_constant() && is_integer(k.value())) {
                    out = pow(self(self, x.base()), static_cast<long>(numerator(k.value())));
                    break;
                }
                [[fallthrough]];
            }
            default: out.num.emplace(Monomial{{intern_atom(x), 1}}, Rational(1));
        }
        memo.emplace(x.node(), out);
        return out;
    };
    return go(go, e);
}

Expr RatContext::to_expr(const Poly& p) {
    std::vector<Expr> terms;
    for (auto& [m, c] : p) {
        std::vector<Expr> fs{pool_.num(c)};
        for (auto& [a, e] : m) fs.push_back(pool_.pow(atoms_[a], e));
        terms.push_back(pool_.mul(fs));
    }
    return pool_.add(terms);
}

Expr RatContext::to_expr(const RatFunc& r) {
    std::vector<Expr> den;
    for (auto& [a, e] : r.dmono) den.push_back(pool_.pow(atoms_[a], e));
    for (auto& [f, k] : r.dfactors) den.push_back(pool_.pow(to_expr(f), k));
    return pool_.mul(to_expr(r.num), pool_.pow(pool_.mul(den), -1));
}

bool RatContext::atom_mentions(std::uint32_t atom, Expr symbol) {
    Expr a = atoms_[atom];
    if (a.is_symbol()) return a == symbol;
    auto it = atom_symbols_.find(a.node());
    if (it == atom_symbols_.end()) it = atom_symbols_.emplace(a.node(), free_symbols(a)).first;
    return std::find(it->second.begin(), it->second.end(), symbol) != it->second.end();
}

bool RatContext::denominator_mentions(const RatFunc& r, Expr symbol) {
    for (auto& [a, e] : r.dmono) {
        if (atom_mentions(a, symbol)) return true;
    }
    for (auto& [f, k] : r.dfactors) {
        for (auto& [m, c] : f) {
            for (auto& [a, e] : m) {
                if (atom_mentions(a, symbol)) return true;
            }
        }
    }
    return false;
}

bool RatContext::mentions(const RatFunc& r, Expr symbol) {
    if (denominator_mentions(r, symbol)) return true;
    for (auto& [m, c] : r.num) {
        for (auto& [a, e] : m) {
            if (atom_mentions(a, symbol)) return true;
        }
    }
    return false;
}

int RatContext::numerator_degree(const RatFunc& r, Expr symbol) {
    int deg = 0;
    for (auto& [m, c] : r.num) {
        for (auto& [a, e] : m) {
            if (!atom_mentions(a, symbol)) continue;
            if (atoms_[a] != symbol) return -1;
            deg = std::max(deg, e);
        }
    }
    return deg;
}

std::pair<Poly, Poly> RatContext::split_linear(const Poly& p, Expr symbol) {
    Poly a, b;
    auto id = atom_id(symbol);
    for (auto& [m, c] : p) {
        int e = id ? mono_exp(m, *id) : 0;
        if (e == 0) {
            b.emplace(m, c);
        } else {
            a.emplace(mono_mul(m, Monomial{{*id, 1}}, -1), c);
        }
    }
    return {a, b};
}

}  // namespace sa::sym
