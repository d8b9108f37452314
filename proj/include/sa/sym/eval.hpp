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
#ifndef SA_SYM_EVAL_HPP
#define SA_SYM_EVAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sa/sym/expr.hpp"

namespace sa::sym {

using RationalAssignment = std::map<Expr, Rational, ExprLess>;
using ModAssignment = std::map<Expr, std::uint64_t, ExprLess>;

// Exact evaluation.  Symbolic exponents must land on integers; logs are rejected.
// Throws PoleEncountered, NonIntegerExponent, ZeroToZero, UnboundSymbol.
Rational eval_exact(Expr e, const RationalAssignment& a);
// Over F_p; an exponent's residue is read as a balanced integer and must be small.
std::uint64_t eval_exact(Expr e, const ModAssignment& a, const PrimeField& field);

// Batch evaluation over F_p at one point, sharing work across calls.
//
// Powers with a non-constant exponent and logs are treated as independent
// atoms whose values come from atom_value, which keeps evaluation total for
// Hill-type terms.  Constant fractional exponents are rejected.
class ModEvaluator {
public:
    using Sampler = std::function<std::uint64_t(Expr)>;

    ModEvaluator(const PrimeField& field, Sampler symbol_value, Sampler atom_value);

    std::uint64_t operator()(Expr e);
    // Throws PoleEncountered when a negative power of zero is met.
    void evaluate(std::span<const Expr> roots, std::vector<std::uint64_t>& out);

private:
    void ensure(std::span<const Expr> roots);
    std::uint64_t compute(Expr e);

    const PrimeField& field_;
    Sampler symbol_value_;
    Sampler atom_value_;
    std::vector<std::uint64_t> val_;
    std::vector<std::uint8_t> done_;
    std::vector<const Node*> stack_;
    std::vector<const Node*> order_;
};

}  // namespace sa::sym

#endif
