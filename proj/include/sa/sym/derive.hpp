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
#ifndef SA_SYM_DERIVE_HPP
#define SA_SYM_DERIVE_HPP

#include <functional>
#include <unordered_map>

#include "sa/sym/expr.hpp"

namespace sa::sym {

// A derivation D on expressions fixed by its value on symbols: D(s) is given
// by the seed callback, extended by the sum, Leibniz, power and log rules.
// Partial derivatives and the total time derivative along a vector field are
// both instances.  Results are memoized per node, so repeated application
// across Lie-derivative orders shares work.
class Derivation {
public:
    using Seed = std::function<Expr(Expr symbol)>;

    // relevant: bloom mask of symbols with a possibly nonzero seed.
    Derivation(Pool& pool, Seed seed, std::uint64_t relevant);

    Expr operator()(Expr e);
    // Symbols created after construction may join the relevant set; memoized
    // results stay valid because they never depended on those symbols.
    void add_relevant(std::uint64_t mask) { relevant_ |= mask; }

    std::size_t memo_size() const { return memo_.size(); }

private:
    Expr apply(Expr e);

    Pool& pool_;
    Seed seed_;
    std::uint64_t relevant_;
    std::unordered_map<const Node*, Expr> memo_;
};

Expr diff(Expr e, Expr symbol);

}  // namespace sa::sym

#endif
