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
#ifndef SA_SYM_TRANSFORM_HPP
#define SA_SYM_TRANSFORM_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sa/sym/expr.hpp"

namespace sa::sym {

using Bindings = std::map<Expr, Expr, ExprLess>;

// Simultaneous substitution; the result is rebuilt through the canonical constructors.
Expr substitute(Expr e, const Bindings& bindings);
std::vector<Expr> substitute(std::span<const Expr> es, const Bindings& bindings);

// Sorted by the structural order.
std::vector<Expr> free_symbols(Expr e);
std::vector<Expr> free_symbols(std::span<const Expr> es);
bool depends_on(Expr e, Expr symbol);

// Rebuilds e bottom-up through the constructors.  Canonical input comes back unchanged.
Expr canonicalize(Expr e);

// Distributes products over sums and expands positive integer powers of sums.
Expr expand(Expr e);

// Equality that also works across pools.
bool structurally_equal(Expr a, Expr b);

// Number of distinct nodes reachable from the roots.
std::size_t dag_size(std::span<const Expr> roots);

}  // namespace sa::sym

#endif
