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
// sa: structural identifiability, observability, accessibility and
// controllability of ODE models.
//
// Exit codes: 0 success, 1 bad input or analysis error, 2 node budget
// exceeded, 3 reproduce disagrees with the recorded outcomes.
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sa/errors.hpp"
#include "sa/model/corpus.hpp"
#include "sa/model/parser.hpp"
#include "sa/report/runner.hpp"
#include "sa/sym/print.hpp"

namespace fs = std::filesystem;
using namespace sa;

namespace {

struct Cli {
    std::string corpus;
    std::string file;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::uint64_t seed = 1;
    unsigned trials = 3;
    std::uint64_t prime = sym::PrimeField::kMersenne61;
    unsigned depth = 0;
    std::vector<double> weights{1.0, 0.5, 0.0};
    std::size_t budget = analysis::kDefaultBudget;
    std::string format = "plain";
    std::string out;
    std::string only;
    unsigned workers = 0;
    bool timing = false;
};

report::RunOptions run_options(const Cli& c) {
    report::RunOptions o;
    o.probe.seed = c.seed;
    o.probe.trials = c.trials;
    o.probe.prime = c.prime;
    o.probe.validate();
    o.budget = c.budget;
    if (c.depth) o.stlc_depth = c.depth;
    o.weights = c.weights;
    o.only = c.only;
    o.workers = c.workers;
    o.timing = c.timing;
    return o;
}

model::ModelSource load_source(const Cli& c, std::string& id) {
    if (!c.corpus.empty() && !c.file.empty()) throw InputError("give either --corpus or a model file, not both");
    if (!c.corpus.empty()) {
        const auto& e = model::corpus_entry(c.corpus);
        id = e.id;
        return e.source;
    }
    if (c.file.empty()) throw InputError("no model given; use --corpus NAME or a model file");
    std::ifstream in(c.file);
    if (!in) throw InputError("FileNotFound: cannot open " + c.file);
    std::stringstream ss;
    ss << in.rdbuf();
    auto src = model::parse_source(ss.str());
    id = src.name;
    return src;
}

void emit(const Cli& c, const report::ReportEntry& e, const report::RunOptions& o) {
    std::string text;
    std::string ext;
    if (c.format == "json") {
        report::ReportBundle b;
        b.tool_version = SA_VERSION;
        b.config = report::config_echo(o);
        b.models.push_back(e);
        text = report::serialize(b);
        ext = ".json";
    } else if (c.format == "markdown") {
        text = report::render_markdown(e);
        ext = ".md";
    } else {
        text = report::render_plain(e);
        ext = ".txt";
    }
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    fs::create_directories(c.out);
    std::string stem = e.variant;
    for (char& ch : stem) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') ch = '_';
    }
    std::ofstream(fs::path(c.out) / (stem + ext)) << text;
}

int cmd_sio(const Cli& c) {
    auto o = run_options(c);
    std::string id;
    auto src = load_source(c, id);
    auto m = model::instantiate(src, c.inputs, c.outputs);
    std::vector<std::string> outs;
    for (auto y : m.outputs) outs.push_back(y.is_symbol() ? y.name() : sym::to_string(y));
    std::vector<std::string> ins;
    for (auto& u : m.inputs) ins.push_back(u.symbol.name());
    auto e = report::run_sio(m, model::variant_slug(src, c.inputs.empty() ? ins : c.inputs, outs), o);
    emit(c, e, o);
    if (e.sio && e.sio->status == "resource_limit") {
        std::cerr << "sa: " << e.error.value_or("node budget exceeded") << "\n";
        return 2;
    }
    return 0;
}

int cmd_control(const Cli& c, bool with_ctrl) {
    auto o = run_options(c);
    if (c.depth) o.access_depth = std::max(o.access_depth, c.depth);
    std::string id;
    auto src = load_source(c, id);
    auto m = model::instantiate(src, c.inputs, {});
    std::vector<std::string> ins;
    for (auto& u : m.inputs) ins.push_back(u.symbol.name());
    std::string slug = id + ":u=";
    for (std::size_t i = 0; i < ins.size(); ++i) slug += (i ? "," : "") + ins[i];
    auto e = report::run_control(m, slug, o);
    if (!with_ctrl) e.ctrl.reset();
    emit(c, e, o);
    return 0;
}

int cmd_reproduce(const Cli& c) {
    auto o = run_options(c);
    fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
    fs::create_directories(dir);
    auto bundle = report::run_corpus(o);
    auto checks = report::check_bundle(bundle);
    std::ofstream(dir / "results.json") << report::serialize(bundle);
    std::ofstream(dir / "table1.md") << report::render_table1(bundle, checks);
    std::ofstream(dir / "table2.md") << report::render_table2(bundle, checks);
    std::cout << report::render_matrix(checks);
    bool ok = std::none_of(checks.begin(), checks.end(), [](const report::RowCheck& r) { return r.status == "fail"; });
    return ok ? 0 : 3;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural analysis of ODE models"};
    app.set_version_flag("--version", SA_VERSION);
    app.require_subcommand(1);
    Cli c;
    std::string inputs, outputs, weights;

    auto add_common = [&](CLI::App* sub, bool model_args) {
        if (model_args) {
            sub->add_option("--corpus", c.corpus, "Corpus model id");
            sub->add_option("file", c.file, "Model file");
            sub->add_option("--inputs", inputs, "Comma-separated inputs");
        }
        sub->add_option("--seed", c.seed, "Sampling seed");
        sub->add_option("--trials", c.trials, "Random points per rank query");
        sub->add_option("--prime", c.prime, "Prime modulus");
        sub->add_option("--budget", c.budget, "Node budget per identifiability run");
        sub->add_option("--depth", c.depth, "Bracket depth for the controllability condition");
        sub->add_option("--weights", weights, "Comma-separated drift weights");
        sub->add_option("--out", c.out, "Output directory");
    };
    auto* sio = app.add_subcommand("sio", "Identifiability and observability");
    add_common(sio, true);
    sio->add_option("--outputs", outputs, "Comma-separated outputs (expressions allowed)");
    sio->add_option("--format", c.format, "json | markdown | plain")->check(CLI::IsMember({"json", "markdown", "plain"}));
    auto* access = app.add_subcommand("access", "Accessibility at the equilibrium");
    add_common(access, true);
    access->add_option("--format", c.format, "json | markdown | plain")->check(CLI::IsMember({"json", "markdown", "plain"}));
    auto* ctrl = app.add_subcommand("ctrl", "Local controllability at the equilibrium");
    add_common(ctrl, true);
    ctrl->add_option("--format", c.format, "json | markdown | plain")->check(CLI::IsMember({"json", "markdown", "plain"}));
    auto* repro = app.add_subcommand("reproduce", "Run the corpus and compare with the recorded tables");
    add_common(repro, false);
    repro->add_option("--only", c.only, "Corpus id prefix");
    repro->add_option("--workers", c.workers, "Worker threads (0 = hardware)");
    repro->add_flag("--timing", c.timing, "Record timings in results.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        c.inputs = split_list(inputs);
        c.outputs = split_list(outputs);
        if (!weights.empty()) {
            c.weights.clear();
            for (auto& w : split_list(weights)) {
                double v = std::stod(w);
                if (v < 0 || v > 1) throw InputError("weights must lie in [0, 1]");
                c.weights.push_back(v);
            }
        }
        if (*sio) return cmd_sio(c);
        if (*access) return cmd_control(c, false);
        if (*ctrl) return cmd_control(c, true);
        return cmd_reproduce(c);
    } catch (const ResourceLimitExceeded& e) {
        std::cerr << "sa: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "sa: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "sa: bad number: " << e.what() << "\n";
        return 1;
    }
}
