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
// Line-oriented model language.
//
//   model biosd_1
//   states X, Z
//   params k_in, b, k1, k2, k3, delta
//   inputs U
//   output X
//   ode X' = k_in*U + b - k1*X*Z - delta*X
//   ode Z' = k2*X - k3
//
// Also accepted: `known c = 3/2`, `input_class U zero_above 1` and
// `let name = expr`.  A let is an auxiliary definition that is inlined
// unless a variant promotes it to an input.
#ifndef SA_MODEL_PARSER_HPP
#define SA_MODEL_PARSER_HPP

#include <memory>
#include <string>
#include <vector>

#include "sa/model/model.hpp"

namespace sa::model {

struct LetDefinition {
    Expr symbol;
    Expr value;
};

// A parsed file before any variant is applied.  Expressions still refer to
// let symbols.
struct ModelSource {
    std::string name;
    std::shared_ptr<Pool> pool;
    std::vector<Expr> states;
    std::vector<Expr> params;
    std::vector<InputSpec> inputs;
    std::vector<std::pair<Expr, Rational>> known_constants;
    std::vector<LetDefinition> lets;
    std::vector<Expr> dynamics;
    std::vector<Expr> outputs;

    const LetDefinition* find_let(const std::string& name) const;
};

ModelSource parse_source(const std::string& text);

// Parses an expression against the symbols declared in src.
Expr parse_expression(const ModelSource& src, const std::string& text);

// Input names may be declared inputs or lets.  Declared inputs left out of a
// non-empty selection become unknown parameters; selected lets become inputs.
// Parameters that only occurred inside a selected let disappear.  Output
// entries are expressions; an empty list keeps the declared outputs.
OdeModel instantiate(const ModelSource& src, const std::vector<std::string>& inputs = {},
                     const std::vector<std::string>& outputs = {});

// parse_source followed by instantiate with the declared selections.
OdeModel parse_model(const std::string& text);

std::string render(const ModelSource& src);
std::string render(const OdeModel& m);

}  // namespace sa::model

#endif
