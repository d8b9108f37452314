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
// Hash-consed symbolic expressions.
//
// Every node lives in a Pool and is interned, so two canonical expressions
// are equal iff their node pointers are equal.  Node ids increase with
// creation order and children always precede parents.
#ifndef SA_SYM_EXPR_HPP
#define SA_SYM_EXPR_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sa/sym/numbers.hpp"

namespace sa::sym {

enum class SymbolKind : std::uint8_t { state, parameter, input, input_derivative, auxiliary };
enum class Kind : std::uint8_t { constant, symbol, log, power, product, sum };

const char* kind_name(SymbolKind k);

class Pool;
struct Node;

class Expr {
public:
    Expr() = default;
    explicit Expr(const Node* n) : n_(n) {}

    const Node* node() const { return n_; }
    explicit operator bool() const { return n_ != nullptr; }
    bool operator==(const Expr& o) const { return n_ == o.n_; }
    bool operator!=(const Expr& o) const { return n_ != o.n_; }

    Kind kind() const;
    std::uint32_t id() const;
    std::uint64_t hash() const;
    std::uint64_t deps() const;
    Pool& pool() const;

    bool is_constant() const { return kind() == Kind::constant; }
    bool is_symbol() const { return kind() == Kind::symbol; }
    bool is_zero() const;
    bool is_one() const;
    const Rational& value() const;

    const std::string& name() const;
    SymbolKind symbol_kind() const;
    // Derivative order of an input-derivative symbol; 0 otherwise.
    std::uint32_t order() const;
    // For an input-derivative symbol the underlying input; otherwise the symbol itself.
    Expr base_input() const;
    std::uint32_t symbol_index() const;

    std::span<const Expr> operands() const;
    Expr base() const { return operands()[0]; }
    Expr exponent() const { return operands()[1]; }
    Expr argument() const { return operands()[0]; }

private:
    const Node* n_ = nullptr;
};

struct Node {
    Kind kind;
    std::uint32_t id;
    std::uint32_t nops;
    std::uint32_t aux;
    std::uint64_t hash;
    std::uint64_t deps;
    Pool* pool;
    const Expr* ops;
};

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return static_cast<std::size_t>(e.hash()); }
};

struct SymbolInfo {
    std::string name;
    SymbolKind kind;
    std::uint32_t order;
    Expr base;
};

// Structural total order: constants by value, symbols by (input, order, name),
// composites by kind then structural hash with a deep tiebreak.
int compare(Expr a, Expr b);
inline bool less(Expr a, Expr b) { return compare(a, b) < 0; }
struct ExprLess {
    bool operator()(Expr a, Expr b) const { return compare(a, b) < 0; }
};

class Pool {
public:
    static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

    explicit Pool(std::size_t budget = kUnlimited);
    Pool(const Pool&) = delete;
    Pool& operator=(const Pool&) = delete;
    ~Pool();

    std::size_t size() const { return nodes_.size(); }
    std::size_t budget() const { return budget_; }
    void set_budget(std::size_t b) { budget_ = b; }

    Expr num(const Rational& q);
    Expr num(long v) { return num(Rational(v)); }
    Expr zero() const { return zero_; }
    Expr one() const { return one_; }

    // Returns the existing symbol when the name is already known.
    Expr symbol(const std::string& name, SymbolKind kind);
    std::optional<Expr> find_symbol(const std::string& name) const;
    // u^(k) for an input u; k = 0 gives u itself.
    Expr input_derivative(Expr input, std::uint32_t order);
    std::size_t symbol_count() const { return symbols_.size(); }

    Expr add(std::span<const Expr> xs);
    Expr add(std::initializer_list<Expr> xs) { return add(std::span<const Expr>(xs.begin(), xs.size())); }
    Expr add(Expr a, Expr b) { return add({a, b}); }
    Expr sub(Expr a, Expr b);
    Expr neg(Expr a);
    Expr mul(std::span<const Expr> xs);
    Expr mul(std::initializer_list<Expr> xs) { return mul(std::span<const Expr>(xs.begin(), xs.size())); }
    Expr mul(Expr a, Expr b) { return mul({a, b}); }
    Expr div(Expr a, Expr b);
    Expr pow(Expr b, Expr e);
    Expr pow(Expr b, long k) { return pow(b, num(k)); }
    Expr log(Expr a);

    // Copies an expression owned by another pool into this one.
    Expr import(Expr e);

    const Rational& constant_value(std::uint32_t aux) const { return constants_[aux]; }
    const SymbolInfo& symbol_info(std::uint32_t aux) const { return symbols_[aux]; }

private:
    friend class Expr;

    Expr intern(Kind kind, std::span<const Expr> ops, std::uint32_t aux, std::uint64_t hash);
    Expr intern_composite(Kind kind, std::span<const Expr> ops);
    Expr import_rec(Expr e, std::unordered_map<const Node*, Expr>& memo);
    Expr scaled(const Rational& c, Expr rest);
    void split_term(Expr t, Rational& coef, Expr& rest);
    const Expr* store_ops(std::span<const Expr> ops);
    void grow_table();

    std::size_t budget_;
    std::deque<Node> nodes_;
    std::deque<Rational> constants_;
    std::deque<SymbolInfo> symbols_;
    std::unordered_map<std::string, std::uint32_t> symbol_by_name_;
    std::vector<std::unique_ptr<Expr[]>> op_blocks_;
    std::size_t op_used_ = 0;
    std::size_t op_capacity_ = 0;
    std::vector<const Node*> table_;
    std::size_t table_used_ = 0;
    Expr zero_;
    Expr one_;
};

inline Kind Expr::kind() const { return n_->kind; }
inline std::uint32_t Expr::id() const { return n_->id; }
inline std::uint64_t Expr::hash() const { return n_->hash; }
inline std::uint64_t Expr::deps() const { return n_->deps; }
inline Pool& Expr::pool() const { return *n_->pool; }
inline std::span<const Expr> Expr::operands() const { return {n_->ops, n_->nops}; }
inline const Rational& Expr::value() const { return n_->pool->constant_value(n_->aux); }
inline bool Expr::is_zero() const { return n_->kind == Kind::constant && value() == 0; }
inline bool Expr::is_one() const { return n_->kind == Kind::constant && value() == 1; }
inline const std::string& Expr::name() const { return n_->pool->symbol_info(n_->aux).name; }
inline SymbolKind Expr::symbol_kind() const { return n_->pool->symbol_info(n_->aux).kind; }
inline std::uint32_t Expr::order() const { return n_->pool->symbol_info(n_->aux).order; }
inline std::uint32_t Expr::symbol_index() const { return n_->aux; }
inline Expr Expr::base_input() const {
    const SymbolInfo& s = n_->pool->symbol_info(n_->aux);
    return s.base ? s.base : *this;
}

// Bloom bit used in Node::deps for a symbol.
inline std::uint64_t symbol_bit(Expr s) { return std::uint64_t{1} << (s.symbol_index() % 64); }

}  // namespace sa::sym

#endif
