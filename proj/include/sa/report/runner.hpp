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
// Batch runs over the embedded corpus and comparison with the recorded outcomes.
#ifndef SA_REPORT_RUNNER_HPP
#define SA_REPORT_RUNNER_HPP

#include <string>
#include <vector>

#include "sa/model/corpus.hpp"
#include "sa/report/report.hpp"

namespace sa::report {

struct RunOptions {
    rank::ProbeConfig probe;
    std::size_t budget = analysis::kDefaultBudget;
    unsigned access_depth = 6;
    unsigned stlc_depth = 5;
    std::vector<double> weights{1.0, 0.5, 0.0};
    // Corpus ids starting with this prefix; empty selects everything.
    std::string only;
    // 0 means one per hardware thread.
    unsigned workers = 0;
    bool timing = false;
};

json config_echo(const RunOptions& o);

// Budget failures become an entry with sio.status = resource_limit.
ReportEntry run_sio(const model::OdeModel& m, const std::string& variant, const RunOptions& o);
// Equilibrium, accessibility and controllability.  Throws NotInputAffine.
ReportEntry run_control(const model::OdeModel& m, const std::string& variant, const RunOptions& o);

std::string control_slug(const model::CorpusEntry& e, const std::vector<std::string>& inputs);

// Every control row and every identifiability variant of the selected entries,
// in corpus order whatever the worker count.
ReportBundle run_corpus(const RunOptions& o);

struct RowCheck {
    int table = 0;
    std::string label;
    std::string variant;
    std::string status;  // pass | fail | skipped
    std::string detail;
};

std::vector<RowCheck> check_bundle(const ReportBundle& b);

std::string render_table1(const ReportBundle& b, const std::vector<RowCheck>& checks);
std::string render_table2(const ReportBundle& b, const std::vector<RowCheck>& checks);
std::string render_matrix(const std::vector<RowCheck>& checks);

}  // namespace sa::report

#endif
