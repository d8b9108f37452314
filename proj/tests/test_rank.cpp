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
#include "sa/rank/rank.hpp"
#include "support.hpp"

using namespace sa;
using namespace sa::rank;
using sa::testing::OPoly;

namespace {

// rows x cols matrix of rank at most r: product of random rows x r and r x cols factors.
ModMatrix low_rank(std::mt19937_64& g, const PrimeField& f, std::size_t rows, std::size_t cols, std::size_t r) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.modulus() - 1);
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(r)), b(r, std::vector<std::uint64_t>(cols));
    for (auto& row : a) {
        for (auto& x : row) x = d(g);
    }
    for (auto& row : b) {
        for (auto& x : row) x = d(g);
    }
    ModMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t s = 0;
            for (std::size_t k = 0; k < r; ++k) s = f.add(s, f.mul(a[i][k], b[k][j]));
            m.at(i, j) = s;
        }
    }
    return m;
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

}  // namespace

TEST_CASE("incremental echelon agrees with plain elimination") {
    auto g = sa::testing::rng_for(3);
    PrimeField f;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 2 + trial % 6, cols = 2 + (trial * 7) % 6, r = 1 + trial % 4;
        ModMatrix m = low_rank(g, f, rows, cols, r);
        Echelon e(f, cols);
        for (std::size_t i = 0; i < rows; ++i) e.add(std::span(m.data).subspan(i * cols, cols));
        CHECK(e.rank() == rank_of(m, f));
        CHECK(e.rank() <= std::min({rows, cols, r}));
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t without = rank_of(m, f, static_cast<std::ptrdiff_t>(c));
            CHECK((without + 1 == e.rank()) == e.contains_unit(c));
        }
    }
}

TEST_CASE("the three deletion kernels agree") {
    auto g = sa::testing::rng_for(4);
    PrimeField f;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t rows = 3 + trial % 5, cols = 3 + trial % 4;
        std::vector<ModMatrix> ms;
        std::vector<Echelon> es;
        for (int t = 0; t < 3; ++t) {
            ModMatrix m = low_rank(g, f, rows, cols, 1 + (trial + t) % 4);
            // A zero column and a duplicated column exercise both deletion outcomes.
            for (std::size_t i = 0; i < rows; ++i) {
                m.at(i, 0) = 0;
                m.at(i, cols - 1) = m.at(i, 1);
            }
            Echelon e(f, cols);
            for (std::size_t i = 0; i < rows; ++i) e.add(std::span(m.data).subspan(i * cols, cols));
            ms.push_back(m);
            es.push_back(std::move(e));
        }
        auto a = deletion_ranks_serial(ms, f);
        CHECK(a == deletion_ranks_parallel(ms, f));
        CHECK(a == deletion_ranks_echelon(es));
    }
}

TEST_CASE("generic rank of polynomial matrices matches fraction-free elimination") {
    auto g = sa::testing::rng_for(9);
    ProbeConfig cfg;
    for (int trial = 0; trial < 15; ++trial) {
        sym::Pool pool;
        std::vector<Expr> vars{pool.symbol("x", sym::SymbolKind::state), pool.symbol("y", sym::SymbolKind::state),
                               pool.symbol("k", sym::SymbolKind::parameter)};
        std::size_t cols = 3 + trial % 2;
        std::vector<std::vector<OPoly>> om;
        for (int i = 0; i < 2; ++i) {
            std::vector<OPoly> row;
            for (std::size_t c = 0; c < cols; ++c) row.push_back(sa::testing::random_poly(g, 3, 2, 2));
            om.push_back(row);
        }
        // A polynomial combination of the first two rows.
        OPoly p = sa::testing::random_poly(g, 3, 1, 2), q = sa::testing::random_poly(g, 3, 1, 2);
        std::vector<OPoly> dep;
        for (std::size_t c = 0; c < cols; ++c) dep.push_back(p * om[0][c] + q * om[1][c]);
        om.push_back(dep);
        if (trial % 3 == 0) {
            std::vector<OPoly> extra;
            for (std::size_t c = 0; c < cols; ++c) extra.push_back(sa::testing::random_poly(g, 3, 2, 3));
            om.push_back(extra);
        }
        SymMatrix sm;
        for (auto& row : om) {
            std::vector<Expr> r;
            for (auto& e : row) r.push_back(to_expr(pool, e, vars));
            sm.push_back(r);
        }
        CHECK(generic_rank(sm, cfg).rank == sa::testing::bareiss_rank(om));
        for (std::size_t c = 0; c < cols; ++c) {
            CHECK(rank_without_column(sm, c, cfg).rank == sa::testing::bareiss_rank(om, static_cast<long>(c)));
        }
    }
}

TEST_CASE("incremental rank matches a one-shot rank") {
    sym::Pool pool;
    Expr x = pool.symbol("x", sym::SymbolKind::state), k = pool.symbol("k", sym::SymbolKind::parameter);
    SymMatrix rows{{x, k, pool.one()}, {pool.mul(x, k), pool.pow(k, 2), k}, {pool.div(pool.one(), x), pool.zero(), x}};
    ProbeConfig cfg;
    IncrementalRank inc(cfg, 3);
    CHECK(inc.add_rows(std::span(rows).subspan(0, 2)) == 1);
    CHECK(inc.add_rows(std::span(rows).subspan(2, 1)) == 2);
    CHECK(inc.rank() == generic_rank(rows, cfg).rank);
    auto del = inc.ranks_without_columns();
    CHECK(del == inc.ranks_without_columns(DeletionKernel::serial));
    CHECK(del == inc.ranks_without_columns(DeletionKernel::parallel));
    auto res = inc.result();
    CHECK(res.trial_ranks.size() == cfg.trials);
}

TEST_CASE("poles are resampled") {
    sym::Pool pool;
    Expr x = pool.symbol("x", sym::SymbolKind::state);
    // Poles only on a thin set; sampling must succeed.
    SymMatrix m{{pool.div(pool.one(), pool.sub(x, pool.num(5))), pool.one()}};
    CHECK(generic_rank(m, ProbeConfig{}).rank == 1);
}

TEST_CASE("probe configuration validation") {
    ProbeConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.prime = 1000000008;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.prime = 1000000007;
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("points depend only on seed, trial and symbol name") {
    ProbeConfig cfg;
    sym::Pool a, b;
    Expr xa = a.symbol("x", sym::SymbolKind::state);
    b.symbol("other", sym::SymbolKind::state);
    Expr xb = b.symbol("x", sym::SymbolKind::state);
    CHECK(PointSampler(cfg, 0, 0).symbol_value(xa) == PointSampler(cfg, 0, 0).symbol_value(xb));
    CHECK(PointSampler(cfg, 0, 0).symbol_value(xa) != PointSampler(cfg, 1, 0).symbol_value(xa));
    ProbeConfig other = cfg;
    other.seed = 2;
    CHECK(PointSampler(cfg, 0, 0).symbol_value(xa) != PointSampler(other, 0, 0).symbol_value(xa));
}

TEST_CASE("span membership") {
    PrimeField f(101);
    std::vector<std::vector<std::uint64_t>> basis{{1, 0, 2}, {0, 1, 3}};
    std::vector<std::uint64_t> in{2, 5, 19}, out{0, 0, 1};
    CHECK(in_span(in, basis, f));
    CHECK_FALSE(in_span(out, basis, f));
}
