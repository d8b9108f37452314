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
#include "sa/report/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

#include "sa/errors.hpp"

namespace sa::report {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

std::string cell(const std::vector<std::string>& xs) { return xs.empty() ? "-" : join(xs, " "); }

void run_jobs(std::vector<std::function<void()>>& jobs, unsigned workers) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) jobs[i]();
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

const ReportEntry* find_entry(const ReportBundle& b, const std::string& variant) {
    for (const auto& e : b.models) {
        if (e.variant == variant) return &e;
    }
    return nullptr;
}

}  // namespace

json config_echo(const RunOptions& o) {
    return json{{"prime", o.probe.prime},       {"trials", o.probe.trials},   {"seed", o.probe.seed},
                {"budget", o.budget},           {"access_depth", o.access_depth}, {"stlc_depth", o.stlc_depth},
                {"weights", o.weights},         {"only", o.only}};
}

ReportEntry run_sio(const model::OdeModel& m, const std::string& variant, const RunOptions& o) {
    ReportEntry e;
    e.name = m.name;
    e.variant = variant;
    analysis::SioOptions so;
    so.probe = o.probe;
    so.budget = o.budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
        e.sio = summarize(analysis::analyze_sio(m, variant, so));
    } catch (const analysis::SioResourceLimit& ex) {
        e.sio = summarize_partial(ex.partial);
        e.error = ex.what();
    }
    if (o.timing)
        e.timing_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

ReportEntry run_control(const model::OdeModel& m, const std::string& variant, const RunOptions& o) {
    ReportEntry e;
    e.name = m.name;
    e.variant = variant;
    auto t0 = std::chrono::steady_clock::now();
    auto a = model::to_affine(m.resolved());
    auto eq = analysis::find_equilibrium(a);
    auto point = analysis::test_point(a, eq);
    analysis::AccessOptions ao;
    ao.probe = o.probe;
    ao.max_depth = o.access_depth;
    auto acc = analysis::analyze_accessibility(a, point, ao);
    analysis::StlcOptions so;
    so.probe = o.probe;
    so.depth = o.stlc_depth;
    so.weights = o.weights;
    auto st = analysis::analyze_stlc(a, point, acc.accessible, so);
    e.access = summarize(acc, eq);
    e.ctrl = summarize(st);
    if (o.timing)
        e.timing_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

std::string control_slug(const model::CorpusEntry& e, const std::vector<std::string>& inputs) {
    std::vector<std::string> names = inputs;
    if (names.empty()) {
        for (auto& u : e.source.inputs) names.push_back(u.symbol.name());
    }
    return e.id + ":u=" + join(names, ",");
}

ReportBundle run_corpus(const RunOptions& o) {
    o.probe.validate();
    const auto& entries = model::corpus();
    std::vector<std::function<void()>> jobs;
    std::vector<ReportEntry> out;
    struct Slot {
        const model::CorpusEntry* entry;
        const model::Variant* variant;
    };
    std::vector<Slot> slots;
    for (const auto& e : entries) {
        if (!o.only.empty() && e.id.rfind(o.only, 0) != 0) continue;
        if (e.table1) slots.push_back({&e, nullptr});
        for (const auto& v : e.variants) slots.push_back({&e, &v});
    }
    out.resize(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        jobs.push_back([&, i] {
            const auto& s = slots[i];
            try {
                if (s.variant) {
                    out[i] = run_sio(s.entry->instantiate(*s.variant), s.variant->slug, o);
                } else {
                    auto m = model::instantiate(s.entry->source, s.entry->table1->inputs, {});
                    out[i] = run_control(m, control_slug(*s.entry, s.entry->table1->inputs), o);
                }
            } catch (const Error& ex) {
                out[i].name = s.entry->id;
                out[i].variant = s.variant ? s.variant->slug : control_slug(*s.entry, s.entry->table1->inputs);
                out[i].error = ex.what();
            }
        });
    }
    run_jobs(jobs, o.workers);
    ReportBundle b;
    b.tool_version = SA_VERSION;
    b.config = config_echo(o);
    b.models = std::move(out);
    return b;
}

std::vector<RowCheck> check_bundle(const ReportBundle& b) {
    std::vector<RowCheck> checks;
    for (const auto& e : model::corpus()) {
        if (e.table1) {
            std::string slug = control_slug(e, e.table1->inputs);
            if (const ReportEntry* r = find_entry(b, slug)) {
                RowCheck c{1, e.table1->label, slug, "pass", ""};
                if (r->error || !r->access || !r->ctrl) {
                    c.status = "fail";
                    c.detail = r->error.value_or("missing result");
                } else {
                    std::vector<std::string> bad;
                    if (r->access->equilibrium.status != e.table1->equilibrium)
                        bad.push_back("equilibrium " + r->access->equilibrium.status);
                    if (r->access->accessible != e.table1->accessible)
                        bad.push_back(std::string("accessible ") + (r->access->accessible ? "yes" : "no"));
                    if (r->access->at_equilibrium != e.table1->at_equilibrium)
                        bad.push_back(std::string("at_equilibrium ") + (r->access->at_equilibrium ? "yes" : "no"));
                    if (r->ctrl->verdict != e.table1->controllable) bad.push_back("controllability " + r->ctrl->verdict);
                    if (!bad.empty()) {
                        c.status = "fail";
                        c.detail = join(bad, "; ");
                    }
                }
                checks.push_back(std::move(c));
            }
        }
        for (const auto& v : e.variants) {
            const ReportEntry* r = find_entry(b, v.slug);
            if (!r) continue;
            RowCheck c{2, e.title, v.slug, "pass", ""};
            const auto& x = v.expected;
            if (!r->sio) {
                c.status = "fail";
                c.detail = r->error.value_or("missing result");
            } else if (r->sio->status == "resource_limit") {
                c.status = x.resource_limit ? "skipped" : "fail";
                c.detail = "node budget exceeded after " + std::to_string(r->sio->orders) + " orders";
            } else if (x.resource_limit) {
                c.status = "fail";
                c.detail = "expected the node budget to stop this run; it completed with rank " +
                           std::to_string(r->sio->rank) + "/" + std::to_string(r->sio->n_augmented);
            } else {
                std::vector<std::string> bad;
                auto cmp = [&](const char* what, const std::vector<std::string>& got,
                               const std::vector<std::string>& want) {
                    if (sorted(got) != sorted(want))
                        bad.push_back(std::string(what) + " {" + join(sorted(got), " ") + "} expected {" +
                                      join(sorted(want), " ") + "}");
                };
                cmp("identifiable", r->sio->identifiable, x.identifiable);
                cmp("non_identifiable", r->sio->non_identifiable, x.non_identifiable);
                cmp("observable", r->sio->observable, x.observable);
                cmp("non_observable", r->sio->non_observable, x.non_observable);
                if (!bad.empty()) {
                    c.status = "fail";
                    c.detail = join(bad, "; ");
                }
            }
            checks.push_back(std::move(c));
        }
    }
    return checks;
}

std::string render_table1(const ReportBundle& b, const std::vector<RowCheck>& checks) {
    std::ostringstream o;
    o << "# Accessibility and controllability\n\n";
    o << "| Model | Inputs | Equilibrium | Accessible | Controllable | Method | Check |\n";
    o << "|---|---|---|---|---|---|---|\n";
    for (const auto& c : checks) {
        if (c.table != 1) continue;
        const ReportEntry* r = find_entry(b, c.variant);
        std::string inputs = c.variant.substr(c.variant.find(":u=") + 3);
        o << "| " << c.label << " | " << inputs << " | ";
        if (r && r->access && r->ctrl) {
            const auto& a = *r->access;
            std::string eq = a.equilibrium.status == "parametric" ? "param." : a.equilibrium.status;
            o << eq << " | " << (a.accessible ? "yes" : "no") << (a.at_equilibrium ? "" : " (neq)") << " | "
              << (r->ctrl->verdict == "not_applicable" ? "NA" : r->ctrl->verdict) << " | " << r->ctrl->method;
        } else {
            o << "error | | | ";
        }
        o << " | " << c.status << " |\n";
    }
    return o.str();
}

std::string render_table2(const ReportBundle& b, const std::vector<RowCheck>& checks) {
    std::ostringstream o;
    o << "# Structural identifiability and observability\n\n";
    o << "| Model | Variant | Identifiable | Non-identifiable | Observable | Non-observable | Check |\n";
    o << "|---|---|---|---|---|---|---|\n";
    for (const auto& c : checks) {
        if (c.table != 2) continue;
        const ReportEntry* r = find_entry(b, c.variant);
        o << "| " << c.label << " | `" << c.variant << "` | ";
        if (r && r->sio && r->sio->status == "completed") {
            const auto& s = *r->sio;
            if (s.sli_and_observable) {
                o << "all | - | all | -";
            } else {
                o << cell(s.identifiable) << " | " << cell(s.non_identifiable) << " | " << cell(s.observable) << " | "
                  << cell(s.non_observable);
            }
        } else if (r && r->sio) {
            o << "budget exceeded | | |";
        } else {
            o << "error | | |";
        }
        o << " | " << c.status << " |\n";
    }
    return o.str();
}

std::string render_matrix(const std::vector<RowCheck>& checks) {
    std::ostringstream o;
    std::size_t pass = 0, fail = 0, skipped = 0;
    for (const auto& c : checks) {
        o << (c.status == "pass" ? "PASS " : c.status == "fail" ? "FAIL " : "SKIP ") << "table" << c.table << " "
          << c.variant;
        if (!c.detail.empty()) o << "  (" << c.detail << ")";
        o << "\n";
        (c.status == "pass" ? pass : c.status == "fail" ? fail : skipped)++;
    }
    o << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
    return o.str();
}

}  // namespace sa::report
