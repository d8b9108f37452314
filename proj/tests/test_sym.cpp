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
#include <doctest.h>

#include "sa/errors.hpp"
#include "sa/model/parser.hpp"
#include "sa/sym/derive.hpp"
#include "sa/sym/eval.hpp"
#include "sa/sym/print.hpp"
#include "sa/sym/ratfunc.hpp"
#include "sa/sym/transform.hpp"
#include "support.hpp"

using namespace sa;
using namespace sa::sym;
using sa::testing::OPoly;

namespace {

// Builds the library expression for an oracle polynomial.
Expr to_expr(Pool& pool, const OPoly& p, const std::vector<Expr>& vars) {
    std::vector<Expr> terms;
    for (auto& [e, c] : p.terms) {
        std::vector<Expr> fs{pool.num(c)};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i]) fs.push_back(pool.pow(vars[i], e[i]));
        }
        terms.push_back(pool.mul(fs));
    }
    return pool.add(terms);
}

RationalAssignment assign(const std::vector<Expr>& vars, const std::vector<Rational>& x) {
    RationalAssignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = x[i];
    return a;
}

}  // namespace

TEST_CASE("like terms and factors are collected") {
    Pool pool;
    Expr x = pool.symbol("x", SymbolKind::state), y = pool.symbol("y", SymbolKind::state);
    CHECK(pool.add(x, x) == pool.mul(pool.num(2), x));
    CHECK(pool.mul(x, x) == pool.pow(x, 2));
    CHECK(pool.sub(x, x).is_zero());
    CHECK(pool.div(x, x).is_one());
    CHECK(pool.pow(pool.mul(x, y), 2) == pool.mul(pool.pow(x, 2), pool.pow(y, 2)));
    CHECK(pool.add(pool.num(Rational(1, 2)), pool.num(Rational(1, 3))) == pool.num(Rational(5, 6)));
    CHECK(pool.add(x, y) == pool.add(y, x));
    CHECK(pool.mul(x, y) == pool.mul(y, x));
}

TEST_CASE("hash is independent of the pool and of construction order") {
    Pool a, b;
    Expr xa = a.symbol("x", SymbolKind::state), ya = a.symbol("y", SymbolKind::parameter);
    Expr yb = b.symbol("y", SymbolKind::parameter), xb = b.symbol("x", SymbolKind::state);
    Expr ea = a.add(a.mul(xa, ya), a.pow(xa, 3));
    Expr eb = b.add(b.pow(xb, 3), b.mul(yb, xb));
    CHECK(ea.hash() == eb.hash());
    CHECK(structurally_equal(ea, eb));
    CHECK(structurally_equal(b.import(ea), eb));
    CHECK(b.import(ea) == eb);
}

TEST_CASE("canonicalize is idempotent on canonical input") {
    Pool pool;
    auto src = model::parse_source("model m\nstates x, y\nparams k, n\node x' = k*x^n/(1 + y) - log(x*y)\node y' = (x + y)^2\n");
    for (Expr e : src.dynamics) CHECK(canonicalize(e) == e);
}

TEST_CASE("zero budget growth throws ResourceLimitExceeded") {
    Pool pool(40);
    Expr x = pool.symbol("x", SymbolKind::state);
    Expr acc = x;
    CHECK_THROWS_AS(
        {
            for (int i = 0; i < 100; ++i) acc = pool.add(pool.mul(acc, x), pool.num(i));
        },
        ResourceLimitExceeded);
}

TEST_CASE("invalid arithmetic") {
    Pool pool;
    Expr x = pool.symbol("x", SymbolKind::state);
    CHECK_THROWS_AS(pool.div(x, pool.zero()), DivisionByZero);
    CHECK_THROWS_AS(pool.pow(pool.zero(), pool.zero()), ZeroToZero);
}

TEST_CASE("derivatives of random polynomials match the oracle") {
    auto g = sa::testing::rng_for(11);
    for (int trial = 0; trial < 60; ++trial) {
        Pool pool;
        std::vector<Expr> vars{pool.symbol("x", SymbolKind::state), pool.symbol("y", SymbolKind::state),
                               pool.symbol("z", SymbolKind::parameter)};
        OPoly p = sa::testing::random_poly(g, 3, 4, 5);
        Expr e = to_expr(pool, p, vars);
        std::vector<Rational> pt{Rational(3, 7), Rational(-5, 2), Rational(11, 3)};
        CHECK(eval_exact(e, assign(vars, pt)) == p.eval(pt));
        for (std::size_t i = 0; i < 3; ++i) {
            Expr d = diff(e, vars[i]);
            CHECK(eval_exact(d, assign(vars, pt)) == p.deriv(i).eval(pt));
            CHECK(expand(d) == expand(to_expr(pool, p.deriv(i), vars)));
        }
    }
}

TEST_CASE("derivative rules for rational, symbolic power and log terms") {
    Pool pool;
    Expr x = pool.symbol("x", SymbolKind::state), n = pool.symbol("n", SymbolKind::parameter),
         k = pool.symbol("k", SymbolKind::parameter);
    RatContext rc(pool);
    // d/dx x^n = n x^(n-1)
    CHECK(rc.equal(diff(pool.pow(x, n), x), pool.mul(n, pool.pow(x, pool.sub(n, pool.one())))));
    // d/dx log(k x) = 1/x
    CHECK(rc.equal(diff(pool.log(pool.mul(k, x)), x), pool.pow(x, -1)));
    // d/dx x/(k + x) = k/(k + x)^2
    Expr h = pool.div(x, pool.add(k, x));
    CHECK(rc.equal(diff(h, x), pool.div(k, pool.pow(pool.add(k, x), 2))));
    // Independent of x.
    CHECK(diff(pool.pow(k, n), x).is_zero());
}

TEST_CASE("expand distributes products and integer powers") {
    Pool pool;
    Expr x = pool.symbol("x", SymbolKind::state), y = pool.symbol("y", SymbolKind::state);
    Expr lhs = expand(pool.pow(pool.add(x, y), 2));
    Expr rhs = pool.add({pool.pow(x, 2), pool.mul({pool.num(2), x, y}), pool.pow(y, 2)});
    CHECK(lhs == rhs);
}

TEST_CASE("printing reparses to the same expression") {
    auto src = model::parse_source(
        "model m\nstates x, y\nparams a, b, n\n"
        "ode x' = a*x^n/(b + x^n) - 3/2*x*y\node y' = -(x - y)^3 + log(a*y) - 2.5\n");
    for (Expr e : src.dynamics) {
        Expr back = model::parse_expression(src, to_string(e));
        CHECK(back == e);
    }
}

TEST_CASE("modular and exact evaluation agree") {
    auto g = sa::testing::rng_for(5);
    PrimeField f;
    for (int trial = 0; trial < 30; ++trial) {
        Pool pool;
        std::vector<Expr> vars{pool.symbol("x", SymbolKind::state), pool.symbol("y", SymbolKind::state)};
        OPoly p = sa::testing::random_poly(g, 2, 5, 6), q = sa::testing::random_poly(g, 2, 3, 3);
        Expr e = pool.div(to_expr(pool, p, vars), pool.add(to_expr(pool, q, vars), pool.num(101)));
        std::vector<Rational> pt{Rational(2, 9), Rational(7, 4)};
        Rational exact;
        try {
            exact = eval_exact(e, assign(vars, pt));
        } catch (const DivisionByZero&) {
            continue;
        }
        ModAssignment ma;
        for (std::size_t i = 0; i < 2; ++i) ma[vars[i]] = f.from_rational(pt[i]);
        CHECK(eval_exact(e, ma, f) == f.from_rational(exact));
    }
}

TEST_CASE("rational functions decide zero and solve linear equations") {
    Pool pool;
    Expr x = pool.symbol("x", SymbolKind::state), k = pool.symbol("k", SymbolKind::parameter);
    RatContext rc(pool);
    Expr one_over = pool.div(pool.one(), pool.add(x, k));
    CHECK(rc.is_zero(pool.sub(pool.add(pool.mul(x, one_over), pool.mul(k, one_over)), pool.one())));
    CHECK_FALSE(rc.is_zero(pool.sub(x, k)));
    // k x + k^2 - 3 = 0 is linear in x.
    RatFunc r = rc.from_expr(pool.add({pool.mul(k, x), pool.pow(k, 2), pool.num(-3)}));
    CHECK(rc.numerator_degree(r, x) == 1);
    auto [coef, rest] = rc.split_linear(r.num, x);
    CHECK(rc.to_expr(coef) == k);
    CHECK(rc.to_expr(rest) == pool.add(pool.pow(k, 2), pool.num(-3)));
    // x only inside a symbolic power is not polynomial in x.
    RatFunc s = rc.from_expr(pool.pow(x, k));
    CHECK(rc.numerator_degree(s, x) == -1);
}

TEST_CASE("substitution and free symbols") {
    Pool pool;
    Expr x = pool.symbol("x", SymbolKind::state), y = pool.symbol("y", SymbolKind::state);
    Expr e = pool.add(pool.mul(x, y), x);
    Expr s = substitute(e, Bindings{{x, pool.num(2)}});
    CHECK(s == pool.add(pool.mul(pool.num(2), y), pool.num(2)));
    CHECK(free_symbols(e).size() == 2);
    CHECK(depends_on(e, y));
    CHECK_FALSE(depends_on(s, x));
}

TEST_CASE("prime field") {
    CHECK(is_prime_u64(PrimeField::kMersenne61));
    CHECK(is_prime_u64(1000000007));
    CHECK_FALSE(is_prime_u64(1000000008));
    CHECK_FALSE(is_prime_u64(1));
    PrimeField f(1000000007);
    for (std::uint64_t a : {2ull, 3ull, 123456789ull}) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), PoleEncountered);
    CHECK(f.from_rational(Rational(1, 2)) == f.inv(2));
}
