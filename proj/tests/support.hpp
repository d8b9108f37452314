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
// Test-only helpers: a dense multivariate polynomial type that shares no code
// with the library, used as an oracle, plus random generators.
#ifndef SA_TESTS_SUPPORT_HPP
#define SA_TESTS_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sa/sym/numbers.hpp"

namespace sa::testing {

using Q = sym::Rational;
using Exps = std::vector<int>;

// Polynomial in a fixed number of variables, coefficients in Q.
struct OPoly {
    std::size_t nvars = 0;
    std::map<Exps, Q> terms;

    OPoly() = default;
    explicit OPoly(std::size_t n) : nvars(n) {}

    static OPoly constant(std::size_t n, const Q& c) {
        OPoly p(n);
        if (c != 0) p.terms[Exps(n, 0)] = c;
        return p;
    }
    static OPoly variable(std::size_t n, std::size_t i) {
        OPoly p(n);
        Exps e(n, 0);
        e[i] = 1;
        p.terms[e] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Exps& e, const Q& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend OPoly operator+(const OPoly& a, const OPoly& b) {
        OPoly r = a;
        r.nvars = std::max(a.nvars, b.nvars);
        for (auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend OPoly operator-(const OPoly& a, const OPoly& b) {
        OPoly r = a;
        r.nvars = std::max(a.nvars, b.nvars);
        for (auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    friend OPoly operator*(const OPoly& a, const OPoly& b) {
        OPoly r(std::max(a.nvars, b.nvars));
        for (auto& [ea, ca] : a.terms) {
            for (auto& [eb, cb] : b.terms) {
                Exps e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const OPoly& a, const OPoly& b) { return a.terms == b.terms; }

    OPoly deriv(std::size_t i) const {
        OPoly r(nvars);
        for (auto& [e, c] : terms) {
            if (e[i] == 0) continue;
            Exps f = e;
            --f[i];
            r.add_term(f, c * e[i]);
        }
        return r;
    }

    Q eval(const std::vector<Q>& x) const {
        Q s = 0;
        for (auto& [e, c] : terms) {
            Q t = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            }
            s += t;
        }
        return s;
    }

    // Leading term under lex order with variable 0 most significant.
    std::pair<Exps, Q> leading() const { return *terms.rbegin(); }

    // Model-file syntax with the given variable names.
    std::string text(const std::vector<std::string>& names) const {
        if (terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [e, c] : terms) {
            std::string t = (c < 0 ? "-" : (first ? "" : "+"));
            Q a = c < 0 ? Q(-c) : c;
            t += "(" + sym::to_string(a) + ")";
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] > 0) t += "*" + names[i] + "^" + std::to_string(e[i]);
            }
            out += (first ? "" : " ") + t;
            first = false;
        }
        return out;
    }
};

// Exact quotient a / b; returns false when b does not divide a.
inline bool exact_divide(const OPoly& a, const OPoly& b, OPoly& q) {
    q = OPoly(a.nvars);
    OPoly r = a;
    auto [lb, cb] = b.leading();
    while (!r.is_zero()) {
        auto [lr, cr] = r.leading();
        Exps e(lr.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = lr[i] - lb[i];
            if (e[i] < 0) return false;
        }
        OPoly t(a.nvars);
        t.terms[e] = cr / cb;
        q = q + t;
        r = r - t * b;
    }
    return true;
}

// Rank over the fraction field by fraction-free (Bareiss) elimination with
// full pivoting.  skip_col < 0 keeps every column.
inline std::size_t bareiss_rank(std::vector<std::vector<OPoly>> m, long skip_col = -1) {
    if (skip_col >= 0) {
        for (auto& row : m) row.erase(row.begin() + skip_col);
    }
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t nv = 0;
    for (auto& row : m) {
        for (auto& p : row) nv = std::max(nv, p.nvars);
    }
    OPoly prev = OPoly::constant(nv, 1);
    std::size_t rank = 0;
    std::vector<bool> used_col(cols, false);
    for (std::size_t k = 0; k < rows; ++k) {
        // Pivot: any nonzero entry in rows >= k among unused columns, smallest degree first.
        long pr = -1, pc = -1;
        int best = 1 << 30;
        for (std::size_t r = k; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (used_col[c] || m[r][c].is_zero()) continue;
                int d = static_cast<int>(m[r][c].terms.size());
                if (d < best) {
                    best = d;
                    pr = static_cast<long>(r);
                    pc = static_cast<long>(c);
                }
            }
        }
        if (pr < 0) break;
        std::swap(m[k], m[static_cast<std::size_t>(pr)]);
        std::size_t c0 = static_cast<std::size_t>(pc);
        used_col[c0] = true;
        ++rank;
        for (std::size_t r = k + 1; r < rows; ++r) {
            const OPoly lead = m[r][c0];
            for (std::size_t c = 0; c < cols; ++c) {
                if (used_col[c] && c != c0) continue;
                OPoly num = m[k][c0] * m[r][c] - lead * m[k][c];
                OPoly q;
                if (!exact_divide(num, prev, q)) throw std::logic_error("Bareiss division was not exact");
                m[r][c] = q;
            }
        }
        prev = m[k][c0];
    }
    return rank;
}

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 7); }

// Sparse random polynomial: `terms` monomials of total degree <= max_deg,
// coefficients in [-3, 3] \ {0}.
inline OPoly random_poly(std::mt19937_64& g, std::size_t nvars, int max_deg, int terms) {
    OPoly p(nvars);
    std::uniform_int_distribution<int> coef(-3, 3), var(0, static_cast<int>(nvars) - 1), deg(0, max_deg);
    for (int t = 0; t < terms; ++t) {
        Exps e(nvars, 0);
        int d = deg(g);
        for (int k = 0; k < d; ++k) ++e[static_cast<std::size_t>(var(g))];
        int c = 0;
        while (c == 0) c = coef(g);
        p.add_term(e, c);
    }
    return p;
}

}  // namespace sa::testing

#endif
