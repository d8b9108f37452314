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
#include "sa/analysis/sio.hpp"

#include "sa/geom/geom.hpp"

namespace sa::analysis {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::observable: return "observable";
        case Classification::non_observable: return "non_observable";
        case Classification::identifiable: return "identifiable";
        case Classification::non_identifiable: return "non_identifiable";
    }
    return "?";
}

Classification classify_variable(std::size_t full_rank, std::size_t deletion_rank, VariableKind kind) {
    if (deletion_rank > full_rank) throw InconsistentWitness(full_rank, deletion_rank);
    bool drop = deletion_rank < full_rank;
    if (kind == VariableKind::state) return drop ? Classification::observable : Classification::non_observable;
    return drop ? Classification::identifiable : Classification::non_identifiable;
}

std::vector<std::string> SioReport::names_with(Classification c) const {
    std::vector<std::string> out;
    for (auto* g : {&states, &params}) {
        for (auto& [n, k] : *g) {
            if (k == c) out.push_back(n);
        }
    }
    return out;
}

SioReport analyze_sio(const model::OdeModel& m0, const std::string& variant, const SioOptions& opts) {
    model::OdeModel m = model::augment_with_params(m0.resolved());
    SioReport rep;
    rep.model = m0.name;
    rep.variant = variant;
    rep.n_augmented = m.n_x();

    rank::IncrementalRank ranker(opts.probe, m.n_x());
    geom::ObsIdentMatrix oi;
    const std::size_t base = m.pool->size();
    try {
        geom::build_OI(m, [&](std::span<const std::vector<sym::Expr>> block) { return ranker.add_rows(block); },
                       opts.budget, oi);
    } catch (const ResourceLimitExceeded& e) {
        rep.rows_built = oi.rows.size();
        rep.orders_built = oi.orders_built;
        rep.rank_after_order = oi.rank_after_order;
        rep.terminal_rank = ranker.rank();
        rep.nodes = e.reached;
        throw SioResourceLimit(e, rep);
    }
    rep.rows_built = oi.rows.size();
    rep.orders_built = oi.orders_built;
    rep.rank_after_order = oi.rank_after_order;
    rep.rank = ranker.result();
    rep.terminal_rank = rep.rank.rank;
    rep.nodes = m.pool->size() - base;
    rep.sli_and_observable = rep.terminal_rank == rep.n_augmented;

    std::vector<std::size_t> deleted;
    if (!rep.sli_and_observable) deleted = ranker.ranks_without_columns(opts.kernel);
    for (std::size_t c = 0; c < m.n_x(); ++c) {
        VariableKind kind = c < m0.n_x() ? VariableKind::state : VariableKind::param;
        std::size_t d = rep.sli_and_observable ? rep.terminal_rank - 1 : deleted[c];
        auto cls = classify_variable(rep.terminal_rank, d, kind);
        (kind == VariableKind::state ? rep.states : rep.params).emplace_back(m.states[c].name(), cls);
    }
    return rep;
}

}  // namespace sa::analysis
