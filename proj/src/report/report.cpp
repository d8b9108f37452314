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
#include "sa/report/report.hpp"

#include <sstream>

#include "sa/sym/print.hpp"

namespace sa::report {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

std::string or_dash(const std::vector<std::string>& xs) { return xs.empty() ? "-" : join(xs, " "); }

template <class T>
void opt_to(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <class T>
void opt_from(const json& j, const char* key, std::optional<T>& v) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) {
        v = it->get<T>();
    } else {
        v.reset();
    }
}

}  // namespace

SioSummary summarize(const analysis::SioReport& r) {
    using analysis::Classification;
    SioSummary s;
    s.status = "completed";
    s.sli_and_observable = r.sli_and_observable;
    s.identifiable = r.names_with(Classification::identifiable);
    s.non_identifiable = r.names_with(Classification::non_identifiable);
    s.observable = r.names_with(Classification::observable);
    s.non_observable = r.names_with(Classification::non_observable);
    s.rank = r.terminal_rank;
    s.n_augmented = r.n_augmented;
    s.orders = r.orders_built;
    s.rank_after_order = r.rank_after_order;
    s.nodes = r.nodes;
    s.trial_ranks = r.rank.trial_ranks;
    return s;
}

SioSummary summarize_partial(const analysis::SioReport& partial) {
    SioSummary s;
    s.status = "resource_limit";
    s.rank = partial.terminal_rank;
    s.n_augmented = partial.n_augmented;
    s.orders = partial.orders_built;
    s.rank_after_order = partial.rank_after_order;
    s.nodes = partial.nodes;
    return s;
}

EquilibriumSummary summarize(const analysis::Equilibrium& eq) {
    EquilibriumSummary s;
    s.status = analysis::to_string(eq.status);
    s.phase = eq.phase;
    for (auto& [k, v] : eq.states) s.states[k.name()] = sym::to_string(v);
    for (auto& [k, v] : eq.inputs) s.inputs[k.name()] = sym::to_string(v);
    for (auto x : eq.free_states) s.free_states.push_back(x.name());
    return s;
}

AccessSummary summarize(const analysis::AccessReport& r, const analysis::Equilibrium& eq) {
    AccessSummary s;
    s.accessible = r.accessible;
    s.distribution_dim = r.dimension;
    s.n = r.n;
    s.depth = r.depth;
    s.at_equilibrium = r.at_equilibrium;
    s.brackets_used = r.spanning;
    s.equilibrium = summarize(eq);
    return s;
}

CtrlSummary summarize(const analysis::StlcReport& r) {
    CtrlSummary s;
    s.verdict = analysis::to_string(r.verdict);
    s.method = r.method;
    s.weight_used = r.weight;
    s.depth = r.depth;
    s.linearization_rank = r.linearization_rank;
    s.obstructions = r.obstructions;
    return s;
}

void to_json(json& j, const SioSummary& s) {
    j = json{{"status", s.status},
             {"sli_and_observable", s.sli_and_observable},
             {"identifiable", s.identifiable},
             {"non_identifiable", s.non_identifiable},
             {"observable", s.observable},
             {"non_observable", s.non_observable},
             {"rank", s.rank},
             {"n_augmented", s.n_augmented},
             {"orders", s.orders},
             {"rank_after_order", s.rank_after_order},
             {"nodes", s.nodes},
             {"trial_ranks", s.trial_ranks}};
}

void from_json(const json& j, SioSummary& s) {
    j.at("status").get_to(s.status);
    j.at("sli_and_observable").get_to(s.sli_and_observable);
    j.at("identifiable").get_to(s.identifiable);
    j.at("non_identifiable").get_to(s.non_identifiable);
    j.at("observable").get_to(s.observable);
    j.at("non_observable").get_to(s.non_observable);
    j.at("rank").get_to(s.rank);
    j.at("n_augmented").get_to(s.n_augmented);
    j.at("orders").get_to(s.orders);
    j.at("rank_after_order").get_to(s.rank_after_order);
    j.at("nodes").get_to(s.nodes);
    j.at("trial_ranks").get_to(s.trial_ranks);
}

void to_json(json& j, const EquilibriumSummary& s) {
    j = json{{"status", s.status},
             {"phase", s.phase},
             {"states", s.states},
             {"inputs", s.inputs},
             {"free_states", s.free_states}};
}

void from_json(const json& j, EquilibriumSummary& s) {
    j.at("status").get_to(s.status);
    j.at("phase").get_to(s.phase);
    j.at("states").get_to(s.states);
    j.at("inputs").get_to(s.inputs);
    j.at("free_states").get_to(s.free_states);
}

void to_json(json& j, const AccessSummary& s) {
    j = json{{"accessible", s.accessible},
             {"distribution_dim", s.distribution_dim},
             {"n", s.n},
             {"depth", s.depth},
             {"at_equilibrium", s.at_equilibrium},
             {"brackets_used", s.brackets_used},
             {"test_point", s.equilibrium}};
}

void from_json(const json& j, AccessSummary& s) {
    j.at("accessible").get_to(s.accessible);
    j.at("distribution_dim").get_to(s.distribution_dim);
    j.at("n").get_to(s.n);
    j.at("depth").get_to(s.depth);
    j.at("at_equilibrium").get_to(s.at_equilibrium);
    j.at("brackets_used").get_to(s.brackets_used);
    j.at("test_point").get_to(s.equilibrium);
}

void to_json(json& j, const CtrlSummary& s) {
    j = json{{"verdict", s.verdict},
             {"method", s.method},
             {"weight_used", nullptr},
             {"depth", s.depth},
             {"linearization_rank", s.linearization_rank},
             {"obstructions", s.obstructions}};
    if (s.weight_used) j["weight_used"] = *s.weight_used;
}

void from_json(const json& j, CtrlSummary& s) {
    j.at("verdict").get_to(s.verdict);
    j.at("method").get_to(s.method);
    opt_from(j, "weight_used", s.weight_used);
    j.at("depth").get_to(s.depth);
    j.at("linearization_rank").get_to(s.linearization_rank);
    j.at("obstructions").get_to(s.obstructions);
}

void to_json(json& j, const ReportEntry& e) {
    j = json{{"name", e.name}, {"variant", e.variant}};
    opt_to(j, "sio", e.sio);
    opt_to(j, "access", e.access);
    opt_to(j, "ctrl", e.ctrl);
    opt_to(j, "error", e.error);
    opt_to(j, "timing_ms", e.timing_ms);
}

void from_json(const json& j, ReportEntry& e) {
    j.at("name").get_to(e.name);
    j.at("variant").get_to(e.variant);
    opt_from(j, "sio", e.sio);
    opt_from(j, "access", e.access);
    opt_from(j, "ctrl", e.ctrl);
    opt_from(j, "error", e.error);
    opt_from(j, "timing_ms", e.timing_ms);
}

void to_json(json& j, const ReportBundle& b) {
    j = json{{"version", b.version}, {"tool_version", b.tool_version}, {"config", b.config}, {"models", b.models}};
}

void from_json(const json& j, ReportBundle& b) {
    j.at("version").get_to(b.version);
    j.at("tool_version").get_to(b.tool_version);
    b.config = j.at("config");
    j.at("models").get_to(b.models);
}

std::string serialize(const ReportBundle& b) { return json(b).dump(2) + "\n"; }

ReportBundle parse_bundle(const std::string& text) { return json::parse(text).get<ReportBundle>(); }

std::string render_plain(const ReportEntry& e) {
    std::ostringstream o;
    o << e.name << " [" << e.variant << "]\n";
    if (e.error) o << "  error: " << *e.error << "\n";
    if (const auto& s = e.sio) {
        if (s->status == "resource_limit") {
            o << "  sio: stopped by the node budget after " << s->orders << " orders (rank " << s->rank << "/"
              << s->n_augmented << ", " << s->nodes << " nodes)\n";
        } else {
            o << "  sio: rank " << s->rank << "/" << s->n_augmented << " after " << s->orders << " orders"
              << (s->sli_and_observable ? ", all identifiable and observable" : "") << "\n";
            o << "    identifiable:     " << or_dash(s->identifiable) << "\n";
            o << "    non-identifiable: " << or_dash(s->non_identifiable) << "\n";
            o << "    observable:       " << or_dash(s->observable) << "\n";
            o << "    non-observable:   " << or_dash(s->non_observable) << "\n";
        }
    }
    if (const auto& a = e.access) {
        o << "  equilibrium: " << a->equilibrium.status << "\n";
        for (auto& [k, v] : a->equilibrium.states) o << "    " << k << "* = " << v << "\n";
        for (auto& [k, v] : a->equilibrium.inputs) o << "    " << k << "* = " << v << "\n";
        o << "  accessible: " << (a->accessible ? "yes" : "no") << " (dimension " << a->distribution_dim << "/" << a->n
          << ", bracket depth " << a->depth << (a->at_equilibrium ? "" : ", at the all-ones point") << ")\n";
    }
    if (const auto& c = e.ctrl) {
        o << "  controllability: " << c->verdict;
        if (c->method != "none") o << " (" << c->method;
        if (c->weight_used) o << ", weight " << *c->weight_used;
        if (c->method != "none") o << ")";
        o << "\n";
        for (auto& ob : c->obstructions) o << "    unneutralized: " << ob << "\n";
    }
    return o.str();
}

std::string render_markdown(const ReportEntry& e) {
    std::ostringstream o;
    o << "### " << e.name << " `" << e.variant << "`\n\n";
    if (e.error) o << "Error: " << *e.error << "\n\n";
    if (const auto& s = e.sio) {
        o << "| | |\n|---|---|\n";
        o << "| status | " << s->status << " |\n";
        o << "| rank | " << s->rank << " / " << s->n_augmented << " |\n";
        o << "| identifiable | " << or_dash(s->identifiable) << " |\n";
        o << "| non-identifiable | " << or_dash(s->non_identifiable) << " |\n";
        o << "| observable | " << or_dash(s->observable) << " |\n";
        o << "| non-observable | " << or_dash(s->non_observable) << " |\n\n";
    }
    if (const auto& a = e.access) {
        o << "| | |\n|---|---|\n";
        o << "| equilibrium | " << a->equilibrium.status << " |\n";
        o << "| accessible | " << (a->accessible ? "yes" : "no") << (a->at_equilibrium ? "" : " (neq)") << " |\n";
        o << "| distribution dimension | " << a->distribution_dim << " / " << a->n << " |\n";
        if (e.ctrl) o << "| controllability | " << e.ctrl->verdict << " (" << e.ctrl->method << ") |\n";
        o << "\n";
    } else if (const auto& c = e.ctrl) {
        o << "| controllability | " << c->verdict << " (" << c->method << ") |\n|---|---|\n\n";
    }
    return o.str();
}

}  // namespace sa::report
