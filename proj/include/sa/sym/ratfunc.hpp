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
// Rational functions over "atoms": symbols plus any subexpression that is not
// a polynomial operation (symbolic powers, logs).  Used for exact zero tests
// and for solving equations that are linear in one unknown.
#ifndef SA_SYM_RATFUNC_HPP
#define SA_SYM_RATFUNC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sa/sym/expr.hpp"

namespace sa::sym {

using Monomial = std::vector<std::pair<std::uint32_t, std::int32_t>>;

// Lexicographic monomial order with atom 0 most significant.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

// num / (dmono * prod dfactors[i].first ^ dfactors[i].second).  The factors are
// non-monomial with leading coefficient 1; known factors are cancelled against
// the numerator by exact division.
struct RatFunc {
    Poly num;
    Monomial dmono;
    std::vector<std::pair<Poly, int>> dfactors;

    bool is_zero() const { return num.empty(); }
};

class RatContext {
public:
    explicit RatContext(Pool& pool) : pool_(pool) {}

    RatFunc from_expr(Expr e);
    Expr to_expr(const RatFunc& r);
    Expr to_expr(const Poly& p);

    RatFunc constant(const Rational& q) const;
    RatFunc add(const RatFunc& a, const RatFunc& b);
    RatFunc neg(const RatFunc& a);
    RatFunc mul(const RatFunc& a, const RatFunc& b);
    // Throws DivisionByZero for the zero function.
    RatFunc inv(const RatFunc& a);
    RatFunc pow(const RatFunc& a, long k);

    bool is_zero(Expr e) { return from_expr(e).is_zero(); }
    bool equal(Expr a, Expr b) { return from_expr(pool_.sub(a, b)).is_zero(); }

    // Whether any atom of the function mentions the symbol (inside or as itself).
    bool mentions(const RatFunc& r, Expr symbol);
    bool denominator_mentions(const RatFunc& r, Expr symbol);
    bool atom_mentions(std::uint32_t atom, Expr symbol);
    // Degree of the numerator in a symbol that appears only as a plain atom.
    int numerator_degree(const RatFunc& r, Expr symbol);
    // For a numerator of degree one in v: returns (coefficient of v, remainder).
    std::pair<Poly, Poly> split_linear(const Poly& p, Expr symbol);

    Expr atom(std::uint32_t id) const { return atoms_[id]; }
    std::optional<std::uint32_t> atom_id(Expr e) const;

private:
    std::uint32_t intern_atom(Expr e);
    void normalize(RatFunc& r);

    Pool& pool_;
    std::vector<Expr> atoms_;
    std::unordered_map<const Node*, std::uint32_t> atom_index_;
    std::unordered_map<const Node*, std::vector<Expr>> atom_symbols_;
};

// Polynomial helpers.
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
// Exact quotient if f divides p.
std::optional<Poly> poly_divide(const Poly& p, const Poly& f);

}  // namespace sa::sym

#endif
