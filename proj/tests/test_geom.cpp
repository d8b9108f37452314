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

#include <map>

#include "sa/geom/geom.hpp"
#include "sa/model/parser.hpp"
#include "sa/sym/print.hpp"
#include "sa/sym/ratfunc.hpp"
#include "support.hpp"

using namespace sa;
using namespace sa::geom;
using sa::testing::OPoly;

namespace {

// Dimension of the degree-n part of the free Lie algebra on k generators
// (necklace count): (1/n) sum_{d | n} mu(d) k^(n/d).
long witt_dimension(long k, long n) {
    auto mu = [](long d) {
        int m = 1;
        for (long p = 2; p * p <= d; ++p) {
            if (d % p) continue;
            d /= p;
            if (d % p == 0) return 0;
            m = -m;
        }
        return d > 1 ? -m : m;
    };
    long s = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d) continue;
        long pw = 1;
        for (long i = 0; i < n / d; ++i) pw *= k;
        s += mu(d) * pw;
    }
    return s / n;
}

Expr to_expr(sym::Pool& pool, const OPoly& p, const std::vector<Expr>& vars) {
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

VectorField random_field(sym::Pool& pool, std::mt19937_64& g, const std::vector<Expr>& vars, bool rational) {
    VectorField f;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Expr e = to_expr(pool, sa::testing::random_poly(g, vars.size(), 3, 3), vars);
        if (rational) {
            Expr den = pool.add(pool.num(1), pool.pow(vars[(i + 1) % vars.size()], 2));
            e = pool.add(e, pool.div(vars[i], den));
        }
        f.push_back(e);
    }
    return f;
}

bool zero_field(sym::RatContext& rc, const VectorField& v) {
    for (Expr e : v) {
        if (!rc.is_zero(e)) return false;
    }
    return true;
}

VectorField add(sym::Pool& pool, const VectorField& a, const VectorField& b) {
    VectorField r;
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(pool.add(a[i], b[i]));
    return r;
}

}  // namespace

TEST_CASE("Hall basis sizes match the necklace counts") {
    for (std::size_t k : {2u, 3u}) {
        unsigned max_deg = k == 2 ? 7 : 5;
        auto basis = enumerate_brackets(k, max_deg);
        std::map<unsigned, long> count;
        for (const auto& b : basis) ++count[b->total_degree()];
        for (unsigned d = 1; d <= max_deg; ++d) CHECK(count[d] == witt_dimension(static_cast<long>(k), d));
    }
    auto two = enumerate_brackets(2, 4);
    std::vector<long> expected{2, 1, 2, 3};
    std::map<unsigned, long> count;
    for (const auto& b : two) ++count[b->total_degree()];
    for (unsigned d = 1; d <= 4; ++d) CHECK(count[d] == expected[d - 1]);
}

TEST_CASE("bracket degrees and weights") {
    auto f = make_leaf(0, 2), g = make_leaf(1, 2);
    auto b = make_bracket(g, make_bracket(f, g));
    CHECK(b->total_degree() == 3);
    CHECK(b->degrees == std::vector<unsigned>{1, 2});
    CHECK(b->weighted_degree(0.5) == doctest::Approx(2.5));
    CHECK(b->to_string() == "[g1,[f,g1]]");
    CHECK(recompute_degrees(*b, 2) == b->degrees);
}

TEST_CASE("brackets are antisymmetric and satisfy Jacobi on random fields") {
    auto g = sa::testing::rng_for(17);
    for (int trial = 0; trial < 50; ++trial) {
        sym::Pool pool;
        std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        std::vector<Expr> xs;
        for (std::size_t i = 0; i < n; ++i) xs.push_back(pool.symbol("x" + std::to_string(i), sym::SymbolKind::state));
        bool rational = trial % 5 == 0;
        VectorField a = random_field(pool, g, xs, rational), b = random_field(pool, g, xs, false),
                    c = random_field(pool, g, xs, false);
        sym::RatContext rc(pool);
        CHECK(zero_field(rc, add(pool, lie_bracket(a, b, xs), lie_bracket(b, a, xs))));
        VectorField j1 = lie_bracket(a, lie_bracket(b, c, xs), xs);
        VectorField j2 = lie_bracket(b, lie_bracket(c, a, xs), xs);
        VectorField j3 = lie_bracket(c, lie_bracket(a, b, xs), xs);
        CHECK(zero_field(rc, add(pool, add(pool, j1, j2), j3)));
    }
}

TEST_CASE("brackets of polynomial fields match the oracle") {
    auto g = sa::testing::rng_for(23);
    for (int trial = 0; trial < 20; ++trial) {
        sym::Pool pool;
        std::vector<Expr> xs{pool.symbol("x", sym::SymbolKind::state), pool.symbol("y", sym::SymbolKind::state)};
        std::vector<OPoly> fp, gp;
        for (int i = 0; i < 2; ++i) {
            fp.push_back(sa::testing::random_poly(g, 2, 3, 3));
            gp.push_back(sa::testing::random_poly(g, 2, 3, 3));
        }
        VectorField f{to_expr(pool, fp[0], xs), to_expr(pool, fp[1], xs)};
        VectorField h{to_expr(pool, gp[0], xs), to_expr(pool, gp[1], xs)};
        VectorField br = lie_bracket(f, h, xs);
        for (std::size_t i = 0; i < 2; ++i) {
            // (Dg f - Df g)_i
            OPoly want(2);
            for (std::size_t j = 0; j < 2; ++j) want = want + gp[i].deriv(j) * fp[j] - fp[i].deriv(j) * gp[j];
            CHECK(sym::expand(br[i]) == sym::expand(to_expr(pool, want, xs)));
        }
    }
}

TEST_CASE("extended Lie derivatives with a constant input equal the classical ones") {
    auto m = model::parse_model(
        "model c\nstates x, y\nparams a, b, K\ninputs u\ninput_class u zero_above 0\noutput x*y\n"
        "ode x' = a*u - b*x*y\node y' = x/(K + x) - u*y\n");
    ExtendedLieDerivatives ext(m);
    Expr h = m.outputs[0];
    sym::RatContext rc(*m.pool);
    for (std::size_t k = 0; k <= 4; ++k) {
        CHECK(rc.equal(ext.order(k)[0], h));
        h = lie_derivative(h, m.dynamics, m.states);
    }
}

TEST_CASE("extended Lie derivatives introduce input derivatives") {
    auto m = model::parse_model("model d\nstates x\ninputs u\noutput x\node x' = u\n");
    ExtendedLieDerivatives ext(m);
    CHECK(sym::to_string(ext.order(1)[0]) == "u");
    Expr u2 = ext.order(3)[0];
    CHECK(u2.is_symbol());
    CHECK(u2.symbol_kind() == sym::SymbolKind::input_derivative);
    CHECK(u2.order() == 2);
}

TEST_CASE("Jacobian and gradient") {
    sym::Pool pool;
    Expr x = pool.symbol("x", sym::SymbolKind::state), y = pool.symbol("y", sym::SymbolKind::state);
    std::vector<Expr> vars{x, y};
    std::vector<Expr> f{pool.mul(x, y), pool.pow(x, 2)};
    auto J = jacobian(f, vars);
    CHECK(J[0][0] == y);
    CHECK(J[0][1] == x);
    CHECK(J[1][0] == pool.mul(pool.num(2), x));
    CHECK(J[1][1].is_zero());
    CHECK(gradient(f[0], vars) == std::vector<Expr>{y, x});
}

TEST_CASE("O_I of a fully measured model stops after order 0") {
    auto m = model::parse_model("model full\nstates x, y\noutput x\noutput y\node x' = -x\node y' = x - y\n");
    std::size_t calls = 0;
    auto oi = build_OI(m, [&](std::span<const std::vector<Expr>> block) { return calls += block.size(), calls; }, 1000000);
    CHECK(oi.orders_built == 1);
    CHECK(oi.rows.size() == 2);
}
