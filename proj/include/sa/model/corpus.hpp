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
// Builtin case-study models and their expected outcomes.
#ifndef SA_MODEL_CORPUS_HPP
#define SA_MODEL_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sa/model/parser.hpp"

namespace sa::model {

struct EmbeddedFile {
    const char* name;
    const char* text;
};

namespace detail {
const std::vector<EmbeddedFile>& embedded_corpus();
const char* embedded_manifest();
}  // namespace detail

struct SioExpectation {
    bool resource_limit = false;
    std::vector<std::string> identifiable;
    std::vector<std::string> non_identifiable;
    std::vector<std::string> observable;
    std::vector<std::string> non_observable;
};

struct Variant {
    std::string slug;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    SioExpectation expected;
};

struct Table1Expectation {
    std::string label;
    std::vector<std::string> inputs;
    std::string equilibrium;  // parametric | numeric | not_found
    bool accessible = true;
    bool at_equilibrium = true;
    std::string controllable;  // STLC | not_proven | not_applicable
};

struct CorpusEntry {
    std::string id;
    std::string title;
    std::string text;
    ModelSource source;
    std::vector<Variant> variants;
    std::optional<Table1Expectation> table1;

    OdeModel instantiate(const Variant& v) const { return model::instantiate(source, v.inputs, v.outputs); }
};

const std::vector<CorpusEntry>& corpus();
// Throws UnknownVariant.
const CorpusEntry& corpus_entry(const std::string& id);

// "<id>[:u=a,b]:y=c,d"; the u part is left out when the declared inputs are used.
std::string variant_slug(const ModelSource& src, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs);

struct VariantRef {
    const CorpusEntry* entry;
    const Variant* variant;
};
// Throws UnknownVariant.
VariantRef find_variant(const std::string& slug);

}  // namespace sa::model

#endif
