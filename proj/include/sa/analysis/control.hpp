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
// Equilibria, accessibility and small-time local controllability of
// input-affine models.
#ifndef SA_ANALYSIS_CONTROL_HPP
#define SA_ANALYSIS_CONTROL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sa/model/model.hpp"
#include "sa/rank/rank.hpp"
#include "sa/sym/transform.hpp"

namespace sa::analysis {

using sym::Expr;

enum class EquilibriumStatus { parametric, numeric, not_found };
const char* to_string(EquilibriumStatus s);

struct Equilibrium {
    EquilibriumStatus status = EquilibriumStatus::not_found;
    // Every state when found; free states map to themselves.
    sym::Bindings states;
    // Inputs that had to be solved for.  The others stay as free constants.
    sym::Bindings inputs;
    std::vector<Expr> free_states;
    int phase = 0;
};

struct EquilibriumOptions {
    // Cap on search nodes per phase.
    std::size_t max_steps = 20000;
};

// Solves f + sum u_i g_i = 0, first for the states alone and then for states
// and inputs together, one equation linear in one unknown at a time.
Equilibrium find_equilibrium(const model::AffineDecomposition& a, const EquilibriumOptions& opts = {});

struct TestPoint {
    sym::Bindings values;
    bool at_equilibrium = false;
};

// The equilibrium when one was found, else every state at 1.
TestPoint test_point(const model::AffineDecomposition& a, const Equilibrium& eq);

// f + sum u_i g_i with the point substituted.
std::vector<Expr> shifted_drift_at(const model::AffineDecomposition& a, const TestPoint& p);

struct AccessOptions {
    rank::ProbeConfig probe;
    unsigned max_depth = 6;
};

struct AccessReport {
    bool accessible = false;
    std::size_t dimension = 0;
    std::size_t n = 0;
    unsigned depth = 0;
    bool at_equilibrium = false;
    // Brackets that raised the dimension, in order.
    std::vector<std::string> spanning;
};

AccessReport analyze_accessibility(const model::AffineDecomposition& a, const TestPoint& p,
                                   const AccessOptions& opts = {});

enum class StlcVerdict { stlc, not_proven, not_applicable };
const char* to_string(StlcVerdict v);

struct StlcOptions {
    rank::ProbeConfig probe;
    unsigned depth = 5;
    std::vector<double> weights{1.0, 0.5, 0.0};
};

struct StlcReport {
    StlcVerdict verdict = StlcVerdict::not_applicable;
    std::string method;
    std::size_t linearization_rank = 0;
    std::optional<double> weight;
    unsigned depth = 0;
    // First bad bracket left unneutralized under each weight tried.
    std::vector<std::string> obstructions;
};

// Requires an equilibrium test point; accessible is the accessibility verdict there.
StlcReport analyze_stlc(const model::AffineDecomposition& a, const TestPoint& p, bool accessible,
                        const StlcOptions& opts = {});

}  // namespace sa::analysis

#endif
