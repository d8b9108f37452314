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
#ifndef SA_MODEL_MODEL_HPP
#define SA_MODEL_MODEL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sa/sym/expr.hpp"
#include "sa/sym/transform.hpp"

namespace sa::model {

using sym::Expr;
using sym::Pool;
using sym::Rational;

struct InputSpec {
    Expr symbol;
    // u^(j) is identically zero for j > zero_above when set.
    std::optional<std::uint32_t> zero_above;
};

struct OdeModel {
    std::string name;
    std::shared_ptr<Pool> pool;
    std::vector<Expr> states;
    std::vector<Expr> params;
    std::vector<InputSpec> inputs;
    std::vector<std::pair<Expr, Rational>> known_constants;
    std::vector<Expr> dynamics;
    std::vector<Expr> outputs;

    std::size_t n_x() const { return states.size(); }
    std::vector<Expr> input_symbols() const;
    std::optional<std::size_t> state_index(const std::string& name) const;
    std::optional<Expr> find(const std::string& name) const;
    // Dynamics and outputs with known constants substituted.
    OdeModel resolved() const;
    // Copy whose expressions live in a fresh pool with the given node budget.
    OdeModel clone_into(std::shared_ptr<Pool> pool) const;
};

struct AffineDecomposition {
    std::shared_ptr<Pool> pool;
    std::vector<Expr> states;
    std::vector<Expr> params;
    std::vector<Expr> inputs;
    std::vector<Expr> drift;
    std::vector<std::vector<Expr>> control_fields;

    // drift + sum u_i g_i
    std::vector<Expr> reassemble() const;
};

// Checks the structural invariants; throws UndeclaredSymbol, DuplicateDeclaration or ArityMismatch.
void validate(const OdeModel& m);

// An empty selection means every declared input.  Throws NotInputAffine.
AffineDecomposition to_affine(const OdeModel& m, std::span<const Expr> input_selection = {});

// States become [x, theta]; parameters get zero dynamics.
OdeModel augment_with_params(const OdeModel& m);

bool structurally_equal(const OdeModel& a, const OdeModel& b);

}  // namespace sa::model

#endif
