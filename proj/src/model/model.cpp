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
#include "sa/model/model.hpp"

#include <algorithm>
#include <set>

#include "sa/errors.hpp"
#include "sa/sym/derive.hpp"

namespace sa::model {

std::vector<Expr> OdeModel::input_symbols() const {
    std::vector<Expr> out;
    for (auto& in : inputs) out.push_back(in.symbol);
    return out;
}

std::optional<std::size_t> OdeModel::state_index(const std::string& n) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].name() == n) return i;
    }
    return std::nullopt;
}

std::optional<Expr> OdeModel::find(const std::string& n) const {
    for (auto* group : {&states, &params}) {
        for (Expr s : *group) {
            if (s.name() == n) return s;
        }
    }
    for (auto& in : inputs) {
        if (in.symbol.name() == n) return in.symbol;
    }
    for (auto& [s, v] : known_constants) {
        if (s.name() == n) return s;
    }
    return std::nullopt;
}

OdeModel OdeModel::resolved() const {
    if (known_constants.empty()) return *this;
    sym::Bindings b;
    for (auto& [s, v] : known_constants) b.emplace(s, pool->num(v));
    OdeModel out = *this;
    out.known_constants.clear();
    out.dynamics = sym::substitute(dynamics, b);
    out.outputs = sym::substitute(outputs, b);
    return out;
}

OdeModel OdeModel::clone_into(std::shared_ptr<Pool> target) const {
    OdeModel out;
    out.name = name;
    out.pool = target;
    auto imp = [&](const std::vector<Expr>& xs) {
        std::vector<Expr> r;
        for (Expr x : xs) r.push_back(target->import(x));
        return r;
    };
    out.states = imp(states);
    out.params = imp(params);
    for (auto& in : inputs) out.inputs.push_back(InputSpec{target->import(in.symbol), in.zero_above});
    for (auto& [s, v] : known_constants) out.known_constants.emplace_back(target->import(s), v);
    out.dynamics = imp(dynamics);
    out.outputs = imp(outputs);
    return out;
}

std::vector<Expr> AffineDecomposition::reassemble() const {
    std::vector<Expr> out;
    for (std::size_t k = 0; k < drift.size(); ++k) {
        std::vector<Expr> terms{drift[k]};
        for (std::size_t i = 0; i < inputs.size(); ++i) terms.push_back(pool->mul(inputs[i], control_fields[i][k]));
        out.push_back(pool->add(terms));
    }
    return out;
}

void validate(const OdeModel& m) {
    if (m.dynamics.size() != m.states.size())
        throw ArityMismatch("model " + m.name + " has " + std::to_string(m.states.size()) + " states but " +
                            std::to_string(m.dynamics.size()) + " equations");
    std::set<std::string> names;
    auto claim = [&](Expr s) {
        if (!names.insert(s.name()).second) throw DuplicateDeclaration("symbol " + s.name() + " declared twice");
    };
    for (Expr s : m.states) claim(s);
    for (Expr s : m.params) claim(s);
    for (auto& in : m.inputs) claim(in.symbol);
    for (auto& [s, v] : m.known_constants) claim(s);
    std::vector<Expr> all = m.dynamics;
    all.insert(all.end(), m.outputs.begin(), m.outputs.end());
    for (Expr s : sym::free_symbols(all)) {
        if (names.count(s.name())) continue;
        if (s.symbol_kind() == sym::SymbolKind::input_derivative && names.count(s.base_input().name())) continue;
        throw UndeclaredSymbol("symbol " + s.name() + " is not declared");
    }
}

AffineDecomposition to_affine(const OdeModel& m, std::span<const Expr> input_selection) {
    AffineDecomposition a;
    a.pool = m.pool;
    a.states = m.states;
    a.params = m.params;
    if (input_selection.empty()) {
        a.inputs = m.input_symbols();
    } else {
        a.inputs.assign(input_selection.begin(), input_selection.end());
    }
    Pool& pool = *m.pool;
    sym::Bindings zero;
    for (Expr u : a.inputs) zero.emplace(u, pool.zero());
    a.control_fields.assign(a.inputs.size(), {});
    for (std::size_t k = 0; k < m.dynamics.size(); ++k) {
        Expr f = m.dynamics[k];
        for (std::size_t i = 0; i < a.inputs.size(); ++i) {
            Expr g = sym::diff(f, a.inputs[i]);
            for (Expr u : a.inputs) {
                if (sym::depends_on(g, u)) throw NotInputAffine(m.states[k].name(), a.inputs[i].name());
            }
            a.control_fields[i].push_back(g);
        }
        a.drift.push_back(sym::substitute(f, zero));
    }
    return a;
}

OdeModel augment_with_params(const OdeModel& m) {
    OdeModel out = m;
    out.states.insert(out.states.end(), m.params.begin(), m.params.end());
    for (std::size_t i = 0; i < m.params.size(); ++i) out.dynamics.push_back(m.pool->zero());
    out.params.clear();
    return out;
}

bool structurally_equal(const OdeModel& a, const OdeModel& b) {
    auto same_names = [](const std::vector<Expr>& x, const std::vector<Expr>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].name() != y[i].name()) return false;
        }
        return true;
    };
    auto same_exprs = [](const std::vector<Expr>& x, const std::vector<Expr>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!sym::structurally_equal(x[i], y[i])) return false;
        }
        return true;
    };
    if (a.name != b.name || !same_names(a.states, b.states) || !same_names(a.params, b.params)) return false;
    if (a.inputs.size() != b.inputs.size() || a.known_constants.size() != b.known_constants.size()) return false;
    for (std::size_t i = 0; i < a.inputs.size(); ++i) {
        if (a.inputs[i].symbol.name() != b.inputs[i].symbol.name() || a.inputs[i].zero_above != b.inputs[i].zero_above)
            return false;
    }
    for (std::size_t i = 0; i < a.known_constants.size(); ++i) {
        if (a.known_constants[i].first.name() != b.known_constants[i].first.name() ||
            a.known_constants[i].second != b.known_constants[i].second)
            return false;
    }
    return same_exprs(a.dynamics, b.dynamics) && same_exprs(a.outputs, b.outputs);
}

}  // namespace sa::model
