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
#include "sa/geom/geom.hpp"

#include <algorithm>

#include "sa/errors.hpp"

namespace sa::geom {

using sym::SymbolKind;

namespace {

// Derivation along a field: x_j -> f_j.
sym::Derivation directional(Pool& pool, const VectorField& f, std::span<const Expr> states) {
    auto rate = std::make_shared<std::unordered_map<const sym::Node*, Expr>>();
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (f[j].is_zero()) continue;
        rate->emplace(states[j].node(), f[j]);
        mask |= sym::symbol_bit(states[j]);
    }
    return sym::Derivation(
        pool,
        [rate, &pool](Expr s) {
            auto it = rate->find(s.node());
            return it == rate->end() ? pool.zero() : it->second;
        },
        mask);
}

Pool& pool_of(std::span<const Expr> xs) {
    for (Expr x : xs) return x.pool();
    throw UnsupportedExpression("empty vector field has no pool");
}

// Restores the pool budget on scope exit.
class BudgetGuard {
public:
    BudgetGuard(Pool& pool, std::size_t extra) : pool_(pool), saved_(pool.budget()) {
        std::size_t cap = extra > Pool::kUnlimited - pool.size() ? Pool::kUnlimited : pool.size() + extra;
        pool.set_budget(std::min(saved_, cap));
    }
    ~BudgetGuard() { pool_.set_budget(saved_); }

private:
    Pool& pool_;
    std::size_t saved_;
};

}  // namespace

std::vector<Expr> gradient(Expr e, std::span<const Expr> vars) {
    std::vector<Expr> out;
    for (Expr v : vars) out.push_back(sym::diff(e, v));
    return out;
}

SymMatrix jacobian(std::span<const Expr> f, std::span<const Expr> vars) {
    SymMatrix out;
    for (Expr fi : f) out.push_back(gradient(fi, vars));
    return out;
}

Expr lie_derivative(Expr h, const VectorField& f, std::span<const Expr> states) {
    auto d = directional(h.pool(), f, states);
    return d(h);
}

VectorField lie_bracket(const VectorField& f, const VectorField& g, std::span<const Expr> states) {
    Pool& pool = pool_of(f);
    auto df = directional(pool, f, states);
    auto dg = directional(pool, g, states);
    VectorField out;
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back(pool.sub(df(g[i]), dg(f[i])));
    return out;
}

bool is_zero_field(const VectorField& f) {
    return std::all_of(f.begin(), f.end(), [](Expr e) { return e.is_zero(); });
}

ExtendedLieDerivatives::ExtendedLieDerivatives(const model::OdeModel& m)
    : m_(m), d_(*m.pool, [this](Expr s) { return seed(s); }, 0) {
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < m.states.size(); ++k) {
        state_rate_.emplace(m.states[k].node(), m.dynamics[k]);
        mask |= sym::symbol_bit(m.states[k]);
    }
    for (auto& in : m.inputs) {
        input_class_.emplace(in.symbol.node(), in.zero_above);
        mask |= sym::symbol_bit(in.symbol);
    }
    d_.add_relevant(mask);
}

Expr ExtendedLieDerivatives::seed(Expr s) {
    Pool& pool = *m_.pool;
    if (auto it = state_rate_.find(s.node()); it != state_rate_.end()) return it->second;
    auto kind = s.symbol_kind();
    if (kind != SymbolKind::input && kind != SymbolKind::input_derivative) return pool.zero();
    Expr base = s.base_input();
    auto it = input_class_.find(base.node());
    if (it == input_class_.end()) return pool.zero();
    std::uint32_t next = s.order() + 1;
    if (it->second && next > *it->second) return pool.zero();
    Expr u = pool.input_derivative(base, next);
    d_.add_relevant(sym::symbol_bit(u));
    return u;
}

const std::vector<Expr>& ExtendedLieDerivatives::order(std::size_t k) {
    if (levels_.empty()) levels_.push_back(m_.outputs);
    while (levels_.size() <= k) {
        std::vector<Expr> next;
        for (Expr e : levels_.back()) next.push_back(d_(e));
        levels_.push_back(std::move(next));
    }
    return levels_[k];
}

std::vector<std::vector<Expr>> extended_lie_derivatives(const model::OdeModel& m, std::size_t max_order) {
    ExtendedLieDerivatives L(m);
    std::vector<std::vector<Expr>> out;
    for (std::size_t k = 0; k <= max_order; ++k) out.push_back(L.order(k));
    return out;
}

namespace {

void build_OI_impl(const model::OdeModel& m, const RankProbe& probe, ObsIdentMatrix& out) {
    Pool& pool = *m.pool;
    out.columns = m.states;
    const std::size_t n = m.states.size();
    ExtendedLieDerivatives L(m);
    std::size_t prev = 0;
    for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
        const std::vector<Expr>& lk = L.order(k);
        SymMatrix block(lk.size(), std::vector<Expr>(n));
        for (std::size_t c = 0; c < n; ++c) {
            Expr col = m.states[c];
            sym::Derivation d(pool, [&](Expr s) { return s == col ? pool.one() : pool.zero(); }, sym::symbol_bit(col));
            for (std::size_t j = 0; j < lk.size(); ++j) block[j][c] = d(lk[j]);
        }
        std::size_t r = probe(block);
        for (std::size_t j = 0; j < block.size(); ++j) {
            out.rows.push_back(std::move(block[j]));
            out.row_meta.emplace_back(j, k);
        }
        out.orders_built = k + 1;
        out.rank_after_order.push_back(r);
        if (r == n || (k > 0 && r == prev)) break;
        prev = r;
    }
}

}  // namespace

void build_OI(const model::OdeModel& m, const RankProbe& probe, std::size_t budget, ObsIdentMatrix& out) {
    Pool& pool = *m.pool;
    const std::size_t base = pool.size();
    BudgetGuard guard(pool, budget);
    try {
        build_OI_impl(m, probe, out);
    } catch (const ResourceLimitExceeded& e) {
        // Report in terms of the nodes this build created.
        throw ResourceLimitExceeded(budget, e.reached - base);
    }
}

ObsIdentMatrix build_OI(const model::OdeModel& m, const RankProbe& probe, std::size_t budget) {
    ObsIdentMatrix out;
    build_OI(m, probe, budget, out);
    return out;
}

unsigned FormalBracket::total_degree() const {
    unsigned t = 0;
    for (unsigned d : degrees) t += d;
    return t;
}

double FormalBracket::weighted_degree(double drift_weight) const {
    double w = drift_weight * degrees[0];
    for (std::size_t i = 1; i < degrees.size(); ++i) w += degrees[i];
    return w;
}

std::string FormalBracket::to_string() const {
    if (is_leaf()) return leaf == 0 ? "f" : "g" + std::to_string(leaf);
    return "[" + left->to_string() + "," + right->to_string() + "]";
}

BracketPtr make_leaf(int index, std::size_t n_fields) {
    auto b = std::make_shared<FormalBracket>();
    b->leaf = index;
    b->degrees.assign(n_fields, 0);
    b->degrees[static_cast<std::size_t>(index)] = 1;
    return b;
}

BracketPtr make_bracket(BracketPtr left, BracketPtr right) {
    auto b = std::make_shared<FormalBracket>();
    b->degrees = left->degrees;
    for (std::size_t i = 0; i < b->degrees.size(); ++i) b->degrees[i] += right->degrees[i];
    b->left = std::move(left);
    b->right = std::move(right);
    return b;
}

std::vector<unsigned> recompute_degrees(const FormalBracket& b, std::size_t n_fields) {
    if (b.is_leaf()) {
        std::vector<unsigned> d(n_fields, 0);
        d[static_cast<std::size_t>(b.leaf)] = 1;
        return d;
    }
    auto l = recompute_degrees(*b.left, n_fields);
    auto r = recompute_degrees(*b.right, n_fields);
    for (std::size_t i = 0; i < n_fields; ++i) l[i] += r[i];
    return l;
}

std::vector<BracketPtr> enumerate_brackets(std::size_t n_fields, unsigned max_total_degree) {
    std::vector<BracketPtr> hall;
    std::unordered_map<const FormalBracket*, std::size_t> index;
    for (std::size_t i = 0; i < n_fields && max_total_degree >= 1; ++i) {
        index.emplace(hall.emplace_back(make_leaf(static_cast<int>(i), n_fields)).get(), i);
    }
    for (unsigned n = 2; n <= max_total_degree; ++n) {
        std::size_t existing = hall.size();
        for (std::size_t vi = 0; vi < existing; ++vi) {
            const BracketPtr v = hall[vi];
            for (std::size_t ui = 0; ui < vi; ++ui) {
                const BracketPtr u = hall[ui];
                if (u->total_degree() + v->total_degree() != n) continue;
                if (!v->is_leaf() && index.at(v->left.get()) > ui) continue;
                hall.push_back(make_bracket(u, v));
                index.emplace(hall.back().get(), hall.size() - 1);
            }
        }
    }
    return hall;
}

BracketEvaluator::BracketEvaluator(std::vector<VectorField> fields, std::vector<Expr> states)
    : fields_(std::move(fields)), states_(std::move(states)) {}

const VectorField& BracketEvaluator::operator()(const BracketPtr& b) {
    if (auto it = memo_.find(b.get()); it != memo_.end()) return it->second;
    VectorField v;
    if (b->is_leaf()) {
        v = fields_.at(static_cast<std::size_t>(b->leaf));
    } else {
        VectorField l = (*this)(b->left);
        const VectorField& r = (*this)(b->right);
        v = lie_bracket(l, r, states_);
    }
    keep_.push_back(b);
    return memo_.emplace(b.get(), std::move(v)).first->second;
}

VectorField evaluate_bracket(const BracketPtr& b, const std::vector<VectorField>& fields, std::span<const Expr> states) {
    BracketEvaluator ev(fields, std::vector<Expr>(states.begin(), states.end()));
    return ev(b);
}

}  // namespace sa::geom
