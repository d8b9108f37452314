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
// Serializable analysis results and their JSON / markdown / plain renderings.
#ifndef SA_REPORT_REPORT_HPP
#define SA_REPORT_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sa/analysis/control.hpp"
#include "sa/analysis/sio.hpp"

namespace sa::report {

using nlohmann::json;

struct SioSummary {
    std::string status;  // completed | resource_limit
    bool sli_and_observable = false;
    std::vector<std::string> identifiable;
    std::vector<std::string> non_identifiable;
    std::vector<std::string> observable;
    std::vector<std::string> non_observable;
    std::size_t rank = 0;
    std::size_t n_augmented = 0;
    std::size_t orders = 0;
    std::vector<std::size_t> rank_after_order;
    std::size_t nodes = 0;
    std::vector<std::size_t> trial_ranks;

    bool operator==(const SioSummary&) const = default;
};

struct EquilibriumSummary {
    std::string status;
    int phase = 0;
    std::map<std::string, std::string> states;
    std::map<std::string, std::string> inputs;
    std::vector<std::string> free_states;

    bool operator==(const EquilibriumSummary&) const = default;
};

struct AccessSummary {
    bool accessible = false;
    std::size_t distribution_dim = 0;
    std::size_t n = 0;
    unsigned depth = 0;
    bool at_equilibrium = false;
    std::vector<std::string> brackets_used;
    EquilibriumSummary equilibrium;

    bool operator==(const AccessSummary&) const = default;
};

struct CtrlSummary {
    std::string verdict;
    std::string method;
    std::optional<double> weight_used;
    unsigned depth = 0;
    std::size_t linearization_rank = 0;
    std::vector<std::string> obstructions;

    bool operator==(const CtrlSummary&) const = default;
};

struct ReportEntry {
    std::string name;
    std::string variant;
    std::optional<SioSummary> sio;
    std::optional<AccessSummary> access;
    std::optional<CtrlSummary> ctrl;
    std::optional<std::string> error;
    std::optional<std::int64_t> timing_ms;

    bool operator==(const ReportEntry&) const = default;
};

struct ReportBundle {
    int version = 1;
    std::string tool_version;
    json config = json::object();
    std::vector<ReportEntry> models;

    bool operator==(const ReportBundle&) const = default;
};

SioSummary summarize(const analysis::SioReport& r);
// For a run stopped by the node budget.
SioSummary summarize_partial(const analysis::SioReport& partial);
EquilibriumSummary summarize(const analysis::Equilibrium& eq);
AccessSummary summarize(const analysis::AccessReport& r, const analysis::Equilibrium& eq);
CtrlSummary summarize(const analysis::StlcReport& r);

void to_json(json& j, const SioSummary& s);
void from_json(const json& j, SioSummary& s);
void to_json(json& j, const EquilibriumSummary& s);
void from_json(const json& j, EquilibriumSummary& s);
void to_json(json& j, const AccessSummary& s);
void from_json(const json& j, AccessSummary& s);
void to_json(json& j, const CtrlSummary& s);
void from_json(const json& j, CtrlSummary& s);
void to_json(json& j, const ReportEntry& e);
void from_json(const json& j, ReportEntry& e);
void to_json(json& j, const ReportBundle& b);
void from_json(const json& j, ReportBundle& b);

// Two-space indented JSON with a trailing newline.
std::string serialize(const ReportBundle& b);
ReportBundle parse_bundle(const std::string& text);

std::string render_plain(const ReportEntry& e);
std::string render_markdown(const ReportEntry& e);

}  // namespace sa::report

#endif
