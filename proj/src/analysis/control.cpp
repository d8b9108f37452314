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
#include "sa/analysis/control.hpp"

#include <algorithm>
#include <cmath>

#include "sa/errors.hpp"
#include "sa/geom/geom.hpp"
#include "sa/sym/eval.hpp"
#include "sa/sym/ratfunc.hpp"

namespace sa::analysis {

using sym::Pool;
using sym::RatContext;
using sym::RatFunc;

const char* to_string(EquilibriumStatus s) {
    switch (s) {
        case EquilibriumStatus::parametric: return "parametric";
        case EquilibriumStatus::numeric: return "numeric";
        case EquilibriumStatus::not_found: return "not_found";
    }
    return "?";
}

const char* to_string(StlcVerdict v) {
    switch (v) {
        case StlcVerdict::stlc: return "STLC";
        case StlcVerdict::not_proven: return "not_proven";
        case StlcVerdict::not_applicable: return "not_applicable";
    }
    return "?";
}

namespace {

class LinearSolver {
public:
    LinearSolver(Pool& pool, bool strict, std::size_t max_steps)
        : pool_(pool), rc_(pool), strict_(strict), max_steps_(max_steps) {}

    bool solve(const std::vector<Expr>& eqs, const std::vector<Expr>& unknowns) { return dfs(eqs, unknowns); }
    const std::vector<std::pair<Expr, Expr>>& chain() const { return chain_; }
    RatContext& rc() { return rc_; }

private:
    bool dfs(const std::vector<Expr>& eqs, const std::vector<Expr>& unknowns) {
        if (++steps_ > max_steps_) return false;
        std::vector<Expr> live;
        std::vector<RatFunc> rs;
        for (Expr e : eqs) {
            RatFunc r = rc_.from_expr(e);
            if (r.is_zero()) continue;
            bool any = std::any_of(unknowns.begin(), unknowns.end(), [&](Expr v) { return rc_.mentions(r, v); });
            if (!any) return false;
            live.push_back(e);
            rs.push_back(std::move(r));
        }
        if (live.empty()) return true;
        for (std::size_t i = 0; i < live.size(); ++i) {
            for (std::size_t k = 0; k < unknowns.size(); ++k) {
                Expr v = unknowns[k];
                if (!rc_.mentions(rs[i], v) || rc_.numerator_degree(rs[i], v) != 1) continue;
                if (strict_ && rc_.denominator_mentions(rs[i], v)) continue;
                auto [coef, rest] = rc_.split_linear(rs[i].num, v);
                Expr sol = pool_.div(pool_.neg(rc_.to_expr(rest)), rc_.to_expr(coef));
                sym::Bindings b{{v, sol}};
                std::vector<Expr> next;
                for (std::size_t j = 0; j < live.size(); ++j) {
                    if (j != i) next.push_back(sym::substitute(live[j], b));
                }
                std::vector<Expr> rest_unknowns = unknowns;
                rest_unknowns.erase(rest_unknowns.begin() + static_cast<std::ptrdiff_t>(k));
                chain_.emplace_back(v, sol);
                try {
                    if (dfs(next, rest_unknowns)) return true;
                } catch (const DivisionByZero&) {
                }
                chain_.pop_back();
                if (steps_ > max_steps_) return false;
            }
        }
        return false;
    }

    Pool& pool_;
    RatContext rc_;
    bool strict_;
    std::size_t max_steps_;
    std::size_t steps_ = 0;
    std::vector<std::pair<Expr, Expr>> chain_;
};

std::optional<Equilibrium> run_phase(const model::AffineDecomposition& a, const std::vector<Expr>& field,
                                     bool with_inputs, std::size_t max_steps) {
    Pool& pool = *a.pool;
    std::vector<Expr> unknowns = a.states;
    if (with_inputs) unknowns.insert(unknowns.end(), a.inputs.begin(), a.inputs.end());
    LinearSolver solver(pool, with_inputs, max_steps);
    if (!solver.solve(field, unknowns)) return std::nullopt;

    sym::Bindings sol;
    const auto& chain = solver.chain();
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        Expr v = sym::substitute(it->second, sol);
        sol[it->first] = solver.rc().to_expr(solver.rc().from_expr(v));
    }
    Equilibrium eq;
    eq.phase = with_inputs ? 2 : 1;
    for (Expr x : a.states) {
        auto f = sol.find(x);
        if (f == sol.end()) {
            eq.free_states.push_back(x);
            eq.states[x] = x;
        } else {
            eq.states[x] = f->second;
        }
    }
    for (Expr u : a.inputs) {
        auto f = sol.find(u);
        if (f != sol.end()) eq.inputs[u] = f->second;
    }
    sym::Bindings all = eq.states;
    all.insert(eq.inputs.begin(), eq.inputs.end());
    try {
        for (Expr e : field) {
            if (!solver.rc().is_zero(sym::substitute(e, all))) return std::nullopt;
        }
    } catch (const DivisionByZero&) {
        return std::nullopt;
    }
    bool closed = true;
    for (auto& [k, v] : all) closed = closed && v.is_constant();
    eq.status = closed ? EquilibriumStatus::numeric : EquilibriumStatus::parametric;
    return eq;
}

// Exact Newton iteration for models without any free constant.
std::optional<Equilibrium> rational_newton(const model::AffineDecomposition& a, const std::vector<Expr>& field) {
    const std::size_t n = a.states.size();
    auto jac = geom::jacobian(field, a.states);
    sym::RationalAssignment x;
    for (Expr s : a.states) x[s] = 1;
    for (int iter = 0; iter < 12; ++iter) {
        std::vector<sym::Rational> fx(n);
        bool zero = true;
        try {
            for (std::size_t i = 0; i < n; ++i) {
                fx[i] = sym::eval_exact(field[i], x);
                zero = zero && fx[i] == 0;
            }
            if (zero) {
                Equilibrium eq;
                eq.status = EquilibriumStatus::numeric;
                for (Expr s : a.states) eq.states[s] = a.pool->num(x[s]);
                return eq;
            }
            std::vector<std::vector<sym::Rational>> m(n, std::vector<sym::Rational>(n + 1));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) m[i][j] = sym::eval_exact(jac[i][j], x);
                m[i][n] = -fx[i];
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t p = c;
                while (p < n && m[p][c] == 0) ++p;
                if (p == n) return std::nullopt;
                std::swap(m[p], m[c]);
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == c || m[r][c] == 0) continue;
                    sym::Rational f = m[r][c] / m[c][c];
                    for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
                }
            }
            for (std::size_t i = 0; i < n; ++i) x[a.states[i]] += m[i][n] / m[i][i];
        } catch (const EvaluationError&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::vector<Expr> at_point(const std::vector<Expr>& v, const TestPoint& p) { return sym::substitute(v, p.values); }

// Values of every vector at one point per trial; all vectors share the point.
std::vector<std::vector<std::vector<std::uint64_t>>> sample_vectors(const std::vector<std::vector<Expr>>& vs,
                                                                    const rank::ProbeConfig& cfg) {
    std::vector<Expr> flat;
    for (const auto& v : vs) flat.insert(flat.end(), v.begin(), v.end());
    std::vector<std::vector<std::vector<std::uint64_t>>> out(cfg.trials);
    for (unsigned t = 0; t < cfg.trials; ++t) {
        auto vals = rank::sample_values(flat, cfg, t);
        std::size_t off = 0;
        for (const auto& v : vs) {
            out[t].emplace_back(vals.begin() + static_cast<std::ptrdiff_t>(off),
                                vals.begin() + static_cast<std::ptrdiff_t>(off + v.size()));
            off += v.size();
        }
    }
    return out;
}

std::vector<geom::VectorField> fields_of(const model::AffineDecomposition& a) {
    std::vector<geom::VectorField> fields{a.reassemble()};
    fields.insert(fields.end(), a.control_fields.begin(), a.control_fields.end());
    return fields;
}

}  // namespace

Equilibrium find_equilibrium(const model::AffineDecomposition& a, const EquilibriumOptions& opts) {
    auto field = a.reassemble();
    if (auto eq = run_phase(a, field, false, opts.max_steps)) return *eq;
    if (auto eq = run_phase(a, field, true, opts.max_steps)) return *eq;
    if (sym::free_symbols(field).size() <= a.states.size()) {
        bool only_states = true;
        for (Expr s : sym::free_symbols(field)) {
            only_states = only_states && std::find(a.states.begin(), a.states.end(), s) != a.states.end();
        }
        if (only_states) {
            if (auto eq = rational_newton(a, field)) return *eq;
        }
    }
    return Equilibrium{};
}

TestPoint test_point(const model::AffineDecomposition& a, const Equilibrium& eq) {
    TestPoint p;
    if (eq.status == EquilibriumStatus::not_found) {
        for (Expr x : a.states) p.values[x] = a.pool->one();
        return p;
    }
    p.at_equilibrium = true;
    p.values = eq.states;
    for (auto& [u, v] : eq.inputs) p.values[u] = v;
    // Free states stay symbolic.
    for (Expr x : eq.free_states) p.values.erase(x);
    return p;
}

std::vector<Expr> shifted_drift_at(const model::AffineDecomposition& a, const TestPoint& p) {
    return at_point(a.reassemble(), p);
}

AccessReport analyze_accessibility(const model::AffineDecomposition& a, const TestPoint& p, const AccessOptions& opts) {
    opts.probe.validate();
    AccessReport rep;
    rep.n = a.states.size();
    rep.at_equilibrium = p.at_equilibrium;
    const auto fields = fields_of(a);
    geom::BracketEvaluator eval(fields, a.states);
    auto brackets = geom::enumerate_brackets(fields.size(), opts.max_depth);
    std::vector<std::vector<Expr>> values;
    std::vector<geom::BracketPtr> seen;
    unsigned idle_levels = 0;
    for (unsigned d = 1; d <= opts.max_depth; ++d) {
        for (const auto& b : brackets) {
            if (b->total_degree() != d) continue;
            values.push_back(at_point(eval(b), p));
            seen.push_back(b);
        }
        rep.depth = d;
        auto sampled = sample_vectors(values, opts.probe);
        sym::PrimeField field(opts.probe.prime);
        std::size_t best = 0;
        std::vector<std::string> best_spanning;
        for (const auto& trial : sampled) {
            rank::Echelon e(field, rep.n);
            std::vector<std::string> spanning;
            for (std::size_t i = 0; i < trial.size(); ++i) {
                if (e.add(trial[i])) spanning.push_back(seen[i]->to_string());
            }
            if (e.rank() > best) {
                best = e.rank();
                best_spanning = std::move(spanning);
            }
        }
        idle_levels = best > rep.dimension || d == 1 ? 0 : idle_levels + 1;
        rep.dimension = best;
        rep.spanning = std::move(best_spanning);
        if (rep.dimension == rep.n || idle_levels >= 2) break;
    }
    rep.accessible = rep.dimension == rep.n;
    return rep;
}

StlcReport analyze_stlc(const model::AffineDecomposition& a, const TestPoint& p, bool accessible,
                        const StlcOptions& opts) {
    opts.probe.validate();
    StlcReport rep;
    rep.depth = opts.depth;
    if (!p.at_equilibrium) {
        rep.method = "none";
        return rep;
    }
    const std::size_t n = a.states.size();
    const std::size_t m = a.control_fields.size();
    sym::PrimeField field(opts.probe.prime);

    // Linearization: rank [B, AB, ..., A^(n-1) B].
    auto jac = geom::jacobian(a.reassemble(), a.states);
    std::vector<std::vector<Expr>> blocks;
    for (auto& row : jac) blocks.push_back(at_point(row, p));
    for (auto& g : a.control_fields) blocks.push_back(at_point(g, p));
    auto sampled = sample_vectors(blocks, opts.probe);
    for (const auto& trial : sampled) {
        rank::Echelon e(field, n);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::uint64_t> v = trial[n + j];
            for (std::size_t k = 0; k < n; ++k) {
                e.add(v);
                std::vector<std::uint64_t> w(n, 0);
                for (std::size_t r = 0; r < n; ++r) {
                    for (std::size_t c = 0; c < n; ++c) w[r] = field.add(w[r], field.mul(trial[r][c], v[c]));
                }
                v = std::move(w);
            }
        }
        rep.linearization_rank = std::max(rep.linearization_rank, e.rank());
    }
    if (rep.linearization_rank == n) {
        rep.verdict = StlcVerdict::stlc;
        rep.method = "linearization";
        return rep;
    }

    rep.method = "sussmann_condition";
    rep.verdict = StlcVerdict::not_proven;
    if (!accessible) return rep;

    const auto fields = fields_of(a);
    geom::BracketEvaluator eval(fields, a.states);
    auto brackets = geom::enumerate_brackets(fields.size(), opts.depth);
    std::vector<std::vector<Expr>> values;
    for (const auto& b : brackets) values.push_back(at_point(eval(b), p));
    auto vals = sample_vectors(values, opts.probe);

    auto is_bad = [](const geom::FormalBracket& b) {
        if (b.degrees[0] % 2 == 0) return false;
        for (std::size_t i = 1; i < b.degrees.size(); ++i) {
            if (b.degrees[i] % 2 != 0) return false;
        }
        return true;
    };
    // Generic rank of a subset: maximum over trials.
    auto subset_rank = [&](const std::vector<std::size_t>& idx) {
        std::size_t best = 0;
        for (const auto& trial : vals) {
            rank::Echelon e(field, n);
            for (std::size_t i : idx) e.add(trial[i]);
            best = std::max(best, e.rank());
        }
        return best;
    };
    constexpr double eps = 1e-9;
    // Unchecked bad brackets have total degree N >= depth + 1 with N odd,
    // at least two control factors, so weighted degree at least w (N - 2) + 2.
    unsigned big_n = std::max(opts.depth + 1, 3u);
    if (big_n % 2 == 0) ++big_n;

    for (double w : opts.weights) {
        std::string obstruction;
        for (std::size_t i = 0; i < brackets.size() && obstruction.empty(); ++i) {
            if (!is_bad(*brackets[i])) continue;
            double wd = brackets[i]->weighted_degree(w);
            std::vector<std::size_t> lower;
            for (std::size_t j = 0; j < brackets.size(); ++j) {
                if (!is_bad(*brackets[j]) && brackets[j]->weighted_degree(w) < wd - eps) lower.push_back(j);
            }
            std::size_t r0 = subset_rank(lower);
            lower.push_back(i);
            if (subset_rank(lower) != r0) obstruction = brackets[i]->to_string();
        }
        if (obstruction.empty()) {
            double limit = w * (big_n - 2) + 2;
            std::vector<std::size_t> lower;
            for (std::size_t j = 0; j < brackets.size(); ++j) {
                if (!is_bad(*brackets[j]) && brackets[j]->weighted_degree(w) < limit - eps) lower.push_back(j);
            }
            if (subset_rank(lower) < n) obstruction = "good brackets below weighted degree " + std::to_string(limit) +
                                                      " do not span at depth " + std::to_string(opts.depth);
        }
        if (obstruction.empty()) {
            rep.verdict = StlcVerdict::stlc;
            rep.weight = w;
            return rep;
        }
        rep.obstructions.push_back(obstruction);
    }
    return rep;
}

}  // namespace sa::analysis
