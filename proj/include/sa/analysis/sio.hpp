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
// Structural identifiability and observability by the rank of the
// observability-identifiability matrix of the parameter-augmented model.
#ifndef SA_ANALYSIS_SIO_HPP
#define SA_ANALYSIS_SIO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "sa/errors.hpp"
#include "sa/model/model.hpp"
#include "sa/rank/rank.hpp"

namespace sa::analysis {

constexpr std::size_t kDefaultBudget = 5'000'000;

struct SioOptions {
    rank::ProbeConfig probe;
    std::size_t budget = kDefaultBudget;
    rank::DeletionKernel kernel = rank::DeletionKernel::echelon;
};

enum class VariableKind { state, param };
enum class Classification { observable, non_observable, identifiable, non_identifiable };

const char* to_string(Classification c);

// Throws InconsistentWitness when the deletion rank exceeds the full rank.
Classification classify_variable(std::size_t full_rank, std::size_t deletion_rank, VariableKind kind);

struct SioReport {
    std::string model;
    std::string variant;
    bool sli_and_observable = false;
    std::vector<std::pair<std::string, Classification>> states;
    std::vector<std::pair<std::string, Classification>> params;
    std::size_t rows_built = 0;
    std::size_t orders_built = 0;
    std::size_t terminal_rank = 0;
    std::size_t n_augmented = 0;
    std::vector<std::size_t> rank_after_order;
    // Nodes created while building O_I.
    std::size_t nodes = 0;
    rank::RankResult rank;

    std::vector<std::string> names_with(Classification c) const;
};

// Budget failure carrying the stats gathered so far.
struct SioResourceLimit : ResourceLimitExceeded {
    SioResourceLimit(const ResourceLimitExceeded& e, SioReport partial)
        : ResourceLimitExceeded(e), partial(std::move(partial)) {}
    SioReport partial;
};

// m is the instantiated variant; known constants are substituted first.
SioReport analyze_sio(const model::OdeModel& m, const std::string& variant, const SioOptions& opts = {});

}  // namespace sa::analysis

#endif
