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
// Generic rank of symbolic matrices by evaluation at random points of F_p.
//
// A random point can only lower the rank, so each query takes the maximum
// over independent trials.  Points are a pure function of (seed, trial,
// attempt, symbol name), which makes results independent of evaluation
// order and worker count.
#ifndef SA_RANK_RANK_HPP
#define SA_RANK_RANK_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sa/sym/eval.hpp"
#include "sa/sym/expr.hpp"

namespace sa::rank {

using sym::Expr;
using sym::PrimeField;
using SymMatrix = std::vector<std::vector<Expr>>;

struct ProbeConfig {
    std::uint64_t prime = PrimeField::kMersenne61;
    unsigned trials = 3;
    std::uint64_t seed = 1;
    // Resamples per trial after a pole before giving up.
    unsigned max_attempts = 32;

    // Throws InputError for a composite modulus or zero trials.
    void validate() const;
};

struct RankResult {
    std::size_t rank = 0;
    unsigned trials = 0;
    std::vector<std::size_t> trial_ranks;
    std::vector<std::uint64_t> witness_points;
    std::string confidence_note;
};

// Values in [2, p - 2] for symbols and for opaque atoms (symbolic powers, logs).
class PointSampler {
public:
    PointSampler(const ProbeConfig& cfg, unsigned trial, unsigned attempt);

    std::uint64_t symbol_value(Expr s) const;
    std::uint64_t atom_value(Expr e) const;
    std::uint64_t digest() const { return key_; }
    sym::ModEvaluator evaluator(const PrimeField& field) const;

private:
    std::uint64_t draw(std::uint64_t h) const;

    std::uint64_t p_;
    std::uint64_t key_;
};

// Dense row-major matrix over F_p.
struct ModMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> data;

    ModMatrix() = default;
    ModMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
    std::uint64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    void append_row(std::span<const std::uint64_t> row);
};

// Reduced row echelon basis, grown one row at a time.
class Echelon {
public:
    Echelon(const PrimeField& field, std::size_t cols);

    // True when the row was independent of the basis.
    bool add(std::span<const std::uint64_t> row);
    bool contains(std::span<const std::uint64_t> v) const;
    // Whether the unit vector e_col lies in the row space; deleting that
    // column lowers the rank exactly in this case.
    bool contains_unit(std::size_t col) const;
    std::size_t rank() const { return basis_.size(); }
    std::size_t cols() const { return cols_; }

private:
    std::vector<std::uint64_t> reduce(std::span<const std::uint64_t> v) const;

    const PrimeField* field_;
    std::size_t cols_;
    std::vector<std::vector<std::uint64_t>> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<std::ptrdiff_t> pivot_row_;
};

// Plain Gaussian elimination; skip_col removes one column first.
std::size_t rank_of(const ModMatrix& m, const PrimeField& field, std::ptrdiff_t skip_col = -1);

// For every column, the rank after deleting it, maximised over trials.
// The serial and OpenMP kernels delete columns explicitly; the echelon kernel
// reads the answer off each trial's reduced basis.
std::vector<std::size_t> deletion_ranks_serial(const std::vector<ModMatrix>& trials, const PrimeField& field);
std::vector<std::size_t> deletion_ranks_parallel(const std::vector<ModMatrix>& trials, const PrimeField& field);
std::vector<std::size_t> deletion_ranks_echelon(const std::vector<Echelon>& trials);

enum class DeletionKernel { echelon, serial, parallel };

// Rows arrive in blocks; every trial keeps its evaluator, values and basis.
// A pole restarts the affected trial at a fresh point.
class IncrementalRank {
public:
    IncrementalRank(const ProbeConfig& cfg, std::size_t cols);
    ~IncrementalRank();
    IncrementalRank(const IncrementalRank&) = delete;
    IncrementalRank& operator=(const IncrementalRank&) = delete;

    // Throws DegenerateSampling.
    std::size_t add_rows(std::span<const std::vector<Expr>> rows);
    std::size_t rank() const;
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t> ranks_without_columns(DeletionKernel kernel = DeletionKernel::echelon) const;
    RankResult result() const;
    const std::vector<ModMatrix>& values() const { return values_; }

private:
    struct Trial;
    void restart(std::size_t t);
    bool push(std::size_t t, std::span<const std::vector<Expr>> rows);

    ProbeConfig cfg_;
    PrimeField field_;
    std::size_t cols_;
    std::vector<std::vector<Expr>> rows_;
    std::vector<std::unique_ptr<Trial>> trials_;
    std::vector<ModMatrix> values_;
};

// Values of exprs at the point of one trial, resampling after a pole.
// Throws DegenerateSampling after max_attempts.
std::vector<std::uint64_t> sample_values(std::span<const Expr> exprs, const ProbeConfig& cfg, unsigned trial);

RankResult generic_rank(const SymMatrix& m, const ProbeConfig& cfg);
// Uses the same points as generic_rank with the same configuration.
RankResult rank_without_column(const SymMatrix& m, std::size_t col, const ProbeConfig& cfg);

// True iff appending v to the basis vectors does not raise their rank.
bool in_span(std::span<const std::uint64_t> v, const std::vector<std::vector<std::uint64_t>>& basis,
             const PrimeField& field);

}  // namespace sa::rank

#endif
