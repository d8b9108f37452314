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
// Acceptance driver: one PASS/FAIL line per criterion.
//
//   sa_acceptance <work dir>
//
// Criteria 1-3 and 7 drive the sa binary end to end (three reproduce runs);
// 4-6 run the matching unit-test cases.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sa/report/runner.hpp"

namespace fs = std::filesystem;
using namespace sa::report;

namespace {

// Pinned limits.
constexpr double kControlSeconds = 600.0;
constexpr std::int64_t kVariantMillis = 120'000;
constexpr std::size_t kControlRows = 8;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    ReportBundle bundle;
    std::string bytes;
    double seconds = 0;
    int exit_code = -1;
};

Run reproduce(const fs::path& dir, unsigned seed, bool timing) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cmd = std::string("\"") + SA_BINARY + "\" reproduce --seed " + std::to_string(seed) + " --out \"" +
                      dir.string() + "\"" + (timing ? " --timing" : "") + " > \"" + (dir / "log.txt").string() +
                      "\" 2>&1";
    Run r;
    auto t0 = std::chrono::steady_clock::now();
    r.exit_code = run(cmd);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.bytes = slurp(dir / "results.json");
    if (!r.bytes.empty()) r.bundle = parse_bundle(r.bytes);
    return r;
}

bool is_biosd(const RowCheck& c) { return c.variant.rfind("biosd", 0) == 0; }

Outcome rows(const std::vector<RowCheck>& checks, int table, int family) {
    std::size_t n = 0, ok = 0;
    std::string bad;
    for (const auto& c : checks) {
        if (c.table != table) continue;
        if (table == 2 && (family == 2) != is_biosd(c)) continue;
        ++n;
        if (c.status != "fail") {
            ++ok;
        } else {
            bad += "\n      " + c.variant + ": " + c.detail;
        }
    }
    return {n > 0 && ok == n, std::to_string(ok) + "/" + std::to_string(n) + " rows" + bad};
}

// Entry with everything that depends on sampling or timing removed.
json categorical(const ReportEntry& e) {
    json j{{"name", e.name}, {"variant", e.variant}, {"error", e.error.has_value()}};
    if (e.sio) {
        j["sio"] = {{"status", e.sio->status},          {"sli", e.sio->sli_and_observable},
                    {"id", e.sio->identifiable},        {"nid", e.sio->non_identifiable},
                    {"obs", e.sio->observable},         {"nobs", e.sio->non_observable},
                    {"rank", e.sio->rank}};
        if (e.sio->status == "resource_limit") j["sio"].erase("rank");
    }
    if (e.access)
        j["access"] = {{"accessible", e.access->accessible},
                       {"dim", e.access->distribution_dim},
                       {"equilibrium", e.access->equilibrium.status},
                       {"at_equilibrium", e.access->at_equilibrium}};
    if (e.ctrl) j["ctrl"] = {{"verdict", e.ctrl->verdict}, {"method", e.ctrl->method}};
    return j;
}

Outcome test_cases(const std::string& binary, const std::string& filter) {
    std::string cmd = std::string("\"") + SA_TEST_DIR + "/" + binary + "\" --test-case=\"" + filter + "\" > /dev/null 2>&1";
    int rc = run(cmd);
    return {rc == 0, binary + (filter.empty() ? "" : " [" + filter + "]") + " exit " + std::to_string(rc)};
}

void report(int n, const char* what, const Outcome& o, int& failures) {
    std::printf("criterion %d %-34s %s  %s\n", n, what, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: sa_acceptance <work dir>\n");
        return 1;
    }
    fs::path work = argv[1];
    int failures = 0;

    Run a = reproduce(work / "seed1_a", 1, false);
    Run b = reproduce(work / "seed1_b", 1, false);
    Run c = reproduce(work / "seed2", 2, true);
    auto checks = check_bundle(a.bundle);

    // 1: control rows, and the time spent on them.
    {
        Outcome o = rows(checks, 1, 0);
        double secs = 0;
        std::size_t n = 0;
        for (const auto& e : c.bundle.models) {
            if (!e.ctrl) continue;
            secs += static_cast<double>(e.timing_ms.value_or(0)) / 1000.0;
            ++n;
        }
        o.pass = o.pass && n == kControlRows && secs <= kControlSeconds;
        char buf[96];
        std::snprintf(buf, sizeof buf, ", %.1f s (limit %.0f s)", secs, kControlSeconds);
        o.detail.insert(o.detail.find(" rows") + 5, buf);
        report(1, "control corpus: access, STLC", o, failures);
    }

    // 2 and 3: identifiability rows with a per-variant time limit.
    for (int family : {2, 3}) {
        Outcome o = rows(checks, 2, family);
        std::int64_t worst = 0;
        for (const auto& e : c.bundle.models) {
            if (!e.sio || (family == 2) != (e.variant.rfind("biosd", 0) == 0)) continue;
            worst = std::max(worst, e.timing_ms.value_or(0));
        }
        if (family == 2) {
            o.pass = o.pass && worst <= kVariantMillis;
            o.detail.insert(o.detail.find(" rows") + 5, ", slowest variant " + std::to_string(worst) + " ms");
        }
        report(family, family == 2 ? "SIO: signal differentiators" : "SIO: feedback circuits", o, failures);
    }

    report(4, "oracle equivalence", test_cases("test_oracle", ""), failures);
    report(5, "geometry properties",
           test_cases("test_geom",
                      "Hall basis sizes*,brackets are antisymmetric*,extended Lie derivatives with a constant*"),
           failures);
    report(6, "controllability sanity",
           test_cases("test_analysis",
                      "double integrator*,random linear*,an even-order drift*,the Brockett integrator*"),
           failures);

    // 7: byte-identical for equal seeds, same categories across seeds.
    {
        Outcome o;
        bool same_bytes = !a.bytes.empty() && a.bytes == b.bytes;
        bool same_categories = a.bundle.models.size() == c.bundle.models.size();
        std::size_t differ = 0;
        for (std::size_t i = 0; same_categories && i < a.bundle.models.size(); ++i) {
            if (categorical(a.bundle.models[i]) != categorical(c.bundle.models[i])) ++differ;
        }
        same_categories = same_categories && differ == 0;
        o.pass = same_bytes && same_categories;
        o.detail = std::string("seed 1 twice: ") + (same_bytes ? "identical" : "differ") + "; seed 1 vs 2: " +
                   std::to_string(differ) + " categorical differences over " +
                   std::to_string(a.bundle.models.size()) + " entries";
        report(7, "determinism", o, failures);
    }

    std::printf("reproduce exit codes %d %d %d; wall time %.0f s per run\n", a.exit_code, b.exit_code, c.exit_code,
                a.seconds);
    return failures == 0 ? 0 : 1;
}
