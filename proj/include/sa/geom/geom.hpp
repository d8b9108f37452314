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
// Vector fields, Lie derivatives and brackets.
#ifndef SA_GEOM_GEOM_HPP
#define SA_GEOM_GEOM_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sa/model/model.hpp"
#include "sa/sym/derive.hpp"

namespace sa::geom {

using sym::Expr;
using sym::Pool;
using VectorField = std::vector<Expr>;
using SymMatrix = std::vector<std::vector<Expr>>;

std::vector<Expr> gradient(Expr e, std::span<const Expr> vars);
SymMatrix jacobian(std::span<const Expr> f, std::span<const Expr> vars);
// dh/dx . f
Expr lie_derivative(Expr h, const VectorField& f, std::span<const Expr> states);
// dg/dx f - df/dx g
VectorField lie_bracket(const VectorField& f, const VectorField& g, std::span<const Expr> states);
bool is_zero_field(const VectorField& f);

// Total time derivative along the model dynamics, including the chain terms
// u^(j) -> u^(j+1).  Input-derivative symbols are created one order at a time.
class ExtendedLieDerivatives {
public:
    explicit ExtendedLieDerivatives(const model::OdeModel& m);

    // L^k h for every output; order 0 is h itself.
    const std::vector<Expr>& order(std::size_t k);
    std::size_t orders_built() const { return levels_.size(); }

private:
    Expr seed(Expr s);

    const model::OdeModel& m_;
    std::unordered_map<const sym::Node*, Expr> state_rate_;
    std::unordered_map<const sym::Node*, std::optional<std::uint32_t>> input_class_;
    sym::Derivation d_;
    std::vector<std::vector<Expr>> levels_;
};

std::vector<std::vector<Expr>> extended_lie_derivatives(const model::OdeModel& m, std::size_t max_order);

struct ObsIdentMatrix {
    SymMatrix rows;
    // (output index, derivative order) per row.
    std::vector<std::pair<std::size_t, std::size_t>> row_meta;
    std::vector<Expr> columns;
    std::size_t orders_built = 0;
    std::vector<std::size_t> rank_after_order;
};

// Receives each new block of gradient rows and returns the rank so far.
using RankProbe = std::function<std::size_t(std::span<const std::vector<Expr>> block)>;

// m must be an augmented model.  Stops when the rank reaches the column count,
// when an order adds no rank, or after n - 1 derivative orders.  budget bounds
// the nodes created during the build; exceeding it throws ResourceLimitExceeded.
ObsIdentMatrix build_OI(const model::OdeModel& m, const RankProbe& probe, std::size_t budget);
// Same, filling out as it goes so a caller keeps partial stats on failure.
void build_OI(const model::OdeModel& m, const RankProbe& probe, std::size_t budget, ObsIdentMatrix& out);

// Leaf 0 is the drift, leaf i >= 1 the i-th control field.
struct FormalBracket {
    int leaf = -1;
    std::shared_ptr<const FormalBracket> left;
    std::shared_ptr<const FormalBracket> right;
    std::vector<unsigned> degrees;

    bool is_leaf() const { return leaf >= 0; }
    unsigned total_degree() const;
    // Weighted degree w*d0 + sum d_i.
    double weighted_degree(double drift_weight) const;
    std::string to_string() const;
};

using BracketPtr = std::shared_ptr<const FormalBracket>;

BracketPtr make_leaf(int index, std::size_t n_fields);
BracketPtr make_bracket(BracketPtr left, BracketPtr right);
std::vector<unsigned> recompute_degrees(const FormalBracket& b, std::size_t n_fields);

// Philip Hall basis of the free Lie algebra on n_fields generators, by
// increasing degree up to max_total_degree.
std::vector<BracketPtr> enumerate_brackets(std::size_t n_fields, unsigned max_total_degree);

// Memoizes subtrees for the lifetime of the object.
class BracketEvaluator {
public:
    BracketEvaluator(std::vector<VectorField> fields, std::vector<Expr> states);
    const VectorField& operator()(const BracketPtr& b);
    const std::vector<VectorField>& fields() const { return fields_; }

private:
    std::vector<VectorField> fields_;
    std::vector<Expr> states_;
    std::unordered_map<const FormalBracket*, VectorField> memo_;
    std::vector<BracketPtr> keep_;
};

VectorField evaluate_bracket(const BracketPtr& b, const std::vector<VectorField>& fields, std::span<const Expr> states);

}  // namespace sa::geom

#endif
