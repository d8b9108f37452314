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
#include "sa/model/corpus.hpp"

#include <json.hpp>

#include "sa/errors.hpp"
#include "sa/sym/print.hpp"

namespace sa::model {

namespace {

using nlohmann::json;

std::vector<std::string> names(const json& j, const std::vector<std::string>& all) {
    if (j.is_string() && j.get<std::string>() == "all") return all;
    return j.get<std::vector<std::string>>();
}

std::vector<std::string> symbol_names(const std::vector<Expr>& xs) {
    std::vector<std::string> out;
    for (Expr x : xs) out.push_back(x.name());
    return out;
}

void check_declared(const OdeModel& m, const std::vector<std::string>& ns, const std::string& slug) {
    for (auto& n : ns) {
        if (!m.find(n)) throw UnknownVariant("manifest entry " + slug + " names unknown symbol " + n);
    }
}

std::vector<CorpusEntry> load() {
    std::vector<CorpusEntry> out;
    json manifest = json::parse(detail::embedded_manifest());
    for (auto& jm : manifest.at("models")) {
        CorpusEntry e;
        e.id = jm.at("id").get<std::string>();
        e.title = jm.at("title").get<std::string>();
        for (auto& f : detail::embedded_corpus()) {
            if (e.id == f.name) e.text = f.text;
        }
        if (e.text.empty()) throw UnknownVariant("manifest names missing model file " + e.id);
        e.source = parse_source(e.text);
        if (jm.contains("table1")) {
            auto& t = jm["table1"];
            Table1Expectation x;
            x.label = t.at("label").get<std::string>();
            if (t.contains("inputs")) x.inputs = t["inputs"].get<std::vector<std::string>>();
            x.equilibrium = t.at("equilibrium").get<std::string>();
            x.accessible = t.at("accessible").get<bool>();
            x.at_equilibrium = t.at("at_equilibrium").get<bool>();
            x.controllable = t.at("controllable").get<std::string>();
            e.table1 = x;
        }
        for (auto& jv : jm.at("variants")) {
            Variant v;
            if (jv.contains("inputs")) v.inputs = jv["inputs"].get<std::vector<std::string>>();
            v.outputs = jv.at("outputs").get<std::vector<std::string>>();
            v.slug = variant_slug(e.source, v.inputs, v.outputs);
            OdeModel m = instantiate(e.source, v.inputs, v.outputs);
            for (auto& y : v.outputs) {
                if (!m.state_index(y)) throw UnknownVariant("output " + y + " of " + v.slug + " is not a state");
            }
            if (jv.value("expect", "") == "resource_limit") {
                v.expected.resource_limit = true;
            } else {
                auto params = symbol_names(m.params);
                auto states = symbol_names(m.states);
                v.expected.identifiable = names(jv.at("identifiable"), params);
                v.expected.non_identifiable = names(jv.at("non_identifiable"), params);
                v.expected.observable = names(jv.at("observable"), states);
                v.expected.non_observable = names(jv.at("non_observable"), states);
                for (auto* g : {&v.expected.identifiable, &v.expected.non_identifiable, &v.expected.observable,
                                &v.expected.non_observable})
                    check_declared(m, *g, v.slug);
            }
            e.variants.push_back(std::move(v));
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = load();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& id) {
    for (auto& e : corpus()) {
        if (e.id == id) return e;
    }
    throw UnknownVariant("no corpus model named " + id);
}

std::string variant_slug(const ModelSource& src, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs) {
    std::vector<std::string> declared;
    for (auto& in : src.inputs) declared.push_back(in.symbol.name());
    std::string s = src.name;
    if (!inputs.empty() && inputs != declared) s += ":u=" + join(inputs);
    std::vector<std::string> ys = outputs;
    if (ys.empty()) {
        for (Expr y : src.outputs) ys.push_back(sym::to_string(y));
    }
    return s + ":y=" + join(ys);
}

VariantRef find_variant(const std::string& slug) {
    for (auto& e : corpus()) {
        for (auto& v : e.variants) {
            if (v.slug == slug) return {&e, &v};
        }
    }
    throw UnknownVariant("no corpus variant " + slug);
}

}  // namespace sa::model
