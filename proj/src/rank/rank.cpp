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
#include "sa/rank/rank.hpp"

#include <algorithm>

#include "sa/errors.hpp"

namespace sa::rank {

using sym::hash_combine;
using sym::mix64;

void ProbeConfig::validate() const {
    if (prime < 5 || prime >= (std::uint64_t{1} << 63) || !sym::is_prime_u64(prime))
        throw InputError("prime " + std::to_string(prime) + " is not a prime in [5, 2^63)");
    if (trials == 0) throw InputError("at least one trial is required");
    if (max_attempts == 0) throw InputError("at least one sampling attempt is required");
}

PointSampler::PointSampler(const ProbeConfig& cfg, unsigned trial, unsigned attempt)
    : p_(cfg.prime), key_(hash_combine(hash_combine(mix64(cfg.seed), trial), attempt)) {}

std::uint64_t PointSampler::draw(std::uint64_t h) const { return 2 + h % (p_ - 3); }

std::uint64_t PointSampler::symbol_value(Expr s) const { return draw(hash_combine(key_, s.hash())); }

std::uint64_t PointSampler::atom_value(Expr e) const {
    return draw(hash_combine(key_ ^ 0x5bd1e9955bd1e995ULL, e.hash()));
}

sym::ModEvaluator PointSampler::evaluator(const PrimeField& field) const {
    PointSampler self = *this;
    return sym::ModEvaluator(
        field, [self](Expr s) { return self.symbol_value(s); }, [self](Expr e) { return self.atom_value(e); });
}

void ModMatrix::append_row(std::span<const std::uint64_t> row) {
    if (rows == 0 && cols == 0) cols = row.size();
    data.insert(data.end(), row.begin(), row.end());
    ++rows;
}

Echelon::Echelon(const PrimeField& field, std::size_t cols) : field_(&field), cols_(cols), pivot_row_(cols, -1) {}

std::vector<std::uint64_t> Echelon::reduce(std::span<const std::uint64_t> v) const {
    std::vector<std::uint64_t> r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::uint64_t c = r[pivots_[i]];
        if (c == 0) continue;
        const auto& b = basis_[i];
        for (std::size_t j = 0; j < cols_; ++j) {
            if (b[j] != 0) r[j] = field_->sub(r[j], field_->mul(c, b[j]));
        }
    }
    return r;
}

bool Echelon::add(std::span<const std::uint64_t> row) {
    auto r = reduce(row);
    std::size_t p = 0;
    while (p < cols_ && r[p] == 0) ++p;
    if (p == cols_) return false;
    std::uint64_t inv = field_->inv(r[p]);
    for (auto& x : r) x = field_->mul(x, inv);
    // Keep the basis fully reduced in the new pivot column.
    for (auto& b : basis_) {
        std::uint64_t c = b[p];
        if (c == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (r[j] != 0) b[j] = field_->sub(b[j], field_->mul(c, r[j]));
        }
    }
    pivot_row_[p] = static_cast<std::ptrdiff_t>(basis_.size());
    basis_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

bool Echelon::contains(std::span<const std::uint64_t> v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
}

bool Echelon::contains_unit(std::size_t col) const {
    std::ptrdiff_t i = pivot_row_[col];
    if (i < 0) return false;
    const auto& b = basis_[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < cols_; ++j) {
        if (j != col && b[j] != 0) return false;
    }
    return true;
}

std::size_t rank_of(const ModMatrix& m, const PrimeField& field, std::ptrdiff_t skip_col) {
    std::vector<std::vector<std::uint64_t>> a;
    for (std::size_t r = 0; r < m.rows; ++r) {
        std::vector<std::uint64_t> row;
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (static_cast<std::ptrdiff_t>(c) != skip_col) row.push_back(m.at(r, c));
        }
        a.push_back(std::move(row));
    }
    std::size_t cols = m.cols - (skip_col >= 0 ? 1 : 0);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        std::uint64_t inv = field.inv(a[rank][c]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            std::uint64_t f = field.mul(a[r][c], inv);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) a[r][j] = field.sub(a[r][j], field.mul(f, a[rank][j]));
        }
        ++rank;
    }
    return rank;
}

std::vector<std::size_t> deletion_ranks_serial(const std::vector<ModMatrix>& trials, const PrimeField& field) {
    std::size_t cols = trials.empty() ? 0 : trials[0].cols;
    std::vector<std::size_t> out(cols, 0);
    for (const auto& m : trials) {
        for (std::size_t c = 0; c < cols; ++c) out[c] = std::max(out[c], rank_of(m, field, static_cast<std::ptrdiff_t>(c)));
    }
    return out;
}

std::vector<std::size_t> deletion_ranks_parallel(const std::vector<ModMatrix>& trials, const PrimeField& field) {
    std::size_t cols = trials.empty() ? 0 : trials[0].cols;
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(trials.size() * cols);
    std::vector<std::size_t> per_job(static_cast<std::size_t>(jobs), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < jobs; ++j) {
        std::size_t t = static_cast<std::size_t>(j) / cols, c = static_cast<std::size_t>(j) % cols;
        per_job[static_cast<std::size_t>(j)] = rank_of(trials[t], field, static_cast<std::ptrdiff_t>(c));
    }
    std::vector<std::size_t> out(cols, 0);
    for (std::size_t j = 0; j < per_job.size(); ++j) out[j % cols] = std::max(out[j % cols], per_job[j]);
    return out;
}

std::vector<std::size_t> deletion_ranks_echelon(const std::vector<Echelon>& trials) {
    std::size_t cols = trials.empty() ? 0 : trials[0].cols();
    std::vector<std::size_t> out(cols, 0);
    for (const auto& e : trials) {
        for (std::size_t c = 0; c < cols; ++c) out[c] = std::max(out[c], e.rank() - (e.contains_unit(c) ? 1 : 0));
    }
    return out;
}

struct IncrementalRank::Trial {
    unsigned attempt = 0;
    PointSampler sampler;
    sym::ModEvaluator eval;
    Echelon echelon;

    Trial(const ProbeConfig& cfg, const PrimeField& field, unsigned index, unsigned attempt_, std::size_t cols)
        : attempt(attempt_), sampler(cfg, index, attempt_), eval(sampler.evaluator(field)), echelon(field, cols) {}
};

IncrementalRank::IncrementalRank(const ProbeConfig& cfg, std::size_t cols) : cfg_(cfg), field_(cfg.prime), cols_(cols) {
    cfg_.validate();
    for (unsigned t = 0; t < cfg_.trials; ++t) {
        trials_.push_back(std::make_unique<Trial>(cfg_, field_, t, 0, cols_));
        values_.emplace_back(0, cols_);
    }
}

IncrementalRank::~IncrementalRank() = default;

void IncrementalRank::restart(std::size_t t) {
    unsigned next = trials_[t]->attempt + 1;
    if (next >= cfg_.max_attempts) throw DegenerateSampling(next);
    // The evaluator keeps a reference to field_, which does not move.
    trials_[t] = std::make_unique<Trial>(cfg_, field_, static_cast<unsigned>(t), next, cols_);
    values_[t] = ModMatrix(0, cols_);
}

bool IncrementalRank::push(std::size_t t, std::span<const std::vector<Expr>> rows) {
    Trial& tr = *trials_[t];
    std::vector<std::uint64_t> vals;
    try {
        for (const auto& row : rows) {
            if (row.size() != cols_) throw UnsupportedExpression("row length does not match the column count");
            tr.eval.evaluate(row, vals);
            values_[t].append_row(vals);
            tr.echelon.add(vals);
        }
    } catch (const EvaluationError&) {
        return false;
    }
    return true;
}

std::size_t IncrementalRank::add_rows(std::span<const std::vector<Expr>> rows) {
    rows_.insert(rows_.end(), rows.begin(), rows.end());
    for (std::size_t t = 0; t < trials_.size(); ++t) {
        if (push(t, rows)) continue;
        for (;;) {
            restart(t);
            if (push(t, rows_)) break;
        }
    }
    return rank();
}

std::size_t IncrementalRank::rank() const {
    std::size_t r = 0;
    for (const auto& t : trials_) r = std::max(r, t->echelon.rank());
    return r;
}

std::vector<std::size_t> IncrementalRank::ranks_without_columns(DeletionKernel kernel) const {
    switch (kernel) {
        case DeletionKernel::serial: return deletion_ranks_serial(values_, field_);
        case DeletionKernel::parallel: return deletion_ranks_parallel(values_, field_);
        case DeletionKernel::echelon: break;
    }
    std::vector<Echelon> es;
    for (const auto& t : trials_) es.push_back(t->echelon);
    return deletion_ranks_echelon(es);
}

RankResult IncrementalRank::result() const {
    RankResult r;
    r.rank = rank();
    r.trials = static_cast<unsigned>(trials_.size());
    for (const auto& t : trials_) {
        r.trial_ranks.push_back(t->echelon.rank());
        r.witness_points.push_back(t->sampler.digest());
    }
    r.confidence_note = "maximum over " + std::to_string(r.trials) + " random points of F_p, p = " +
                        std::to_string(cfg_.prime) +
                        "; a point underestimates the rank only if it is a root of a nonzero maximal minor, "
                        "probability at most deg/(p - 3) per trial";
    return r;
}

std::vector<std::uint64_t> sample_values(std::span<const Expr> exprs, const ProbeConfig& cfg, unsigned trial) {
    PrimeField field(cfg.prime);
    std::vector<std::uint64_t> out;
    for (unsigned attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        auto eval = PointSampler(cfg, trial, attempt).evaluator(field);
        try {
            eval.evaluate(exprs, out);
            return out;
        } catch (const EvaluationError&) {
        }
    }
    throw DegenerateSampling(cfg.max_attempts);
}

RankResult generic_rank(const SymMatrix& m, const ProbeConfig& cfg) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    IncrementalRank ir(cfg, cols);
    ir.add_rows(m);
    return ir.result();
}

RankResult rank_without_column(const SymMatrix& m, std::size_t col, const ProbeConfig& cfg) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    if (col >= cols) throw InputError("column index out of range");
    IncrementalRank ir(cfg, cols);
    ir.add_rows(m);
    RankResult r = ir.result();
    PrimeField field(cfg.prime);
    r.rank = 0;
    for (std::size_t t = 0; t < ir.values().size(); ++t) {
        r.trial_ranks[t] = rank_of(ir.values()[t], field, static_cast<std::ptrdiff_t>(col));
        r.rank = std::max(r.rank, r.trial_ranks[t]);
    }
    return r;
}

bool in_span(std::span<const std::uint64_t> v, const std::vector<std::vector<std::uint64_t>>& basis,
             const PrimeField& field) {
    Echelon e(field, v.size());
    for (const auto& b : basis) e.add(b);
    return e.contains(v);
}

}  // namespace sa::rank
