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
// Random polynomial models checked against an exact, independent build of the
// observability-identifiability matrix: Lie derivatives on dense polynomials
// and fraction-free elimination over Q(z), always to the full n - 1 orders.
#include <doctest.h>

#include "sa/analysis/sio.hpp"
#include "sa/model/parser.hpp"
#include "support.hpp"

using namespace sa;
using namespace sa::analysis;
using sa::testing::OPoly;

namespace {

struct RandomModel {
    std::size_t nx = 0, np = 0;
    std::vector<OPoly> f;  // over (x, theta)
    OPoly y;
    std::vector<std::string> names;

    std::string text() const {
        std::string t = "model rnd\nstates ";
        for (std::size_t i = 0; i < nx; ++i) t += (i ? ", " : "") + names[i];
        if (np) {
            t += "\nparams ";
            for (std::size_t i = 0; i < np; ++i) t += (i ? ", " : "") + names[nx + i];
        }
        t += "\noutput " + y.text(names) + "\n";
        for (std::size_t i = 0; i < nx; ++i) t += "ode " + names[i] + "' = " + f[i].text(names) + "\n";
        return t;
    }
};

RandomModel make_model(std::mt19937_64& g, std::size_t nx, std::size_t np) {
    RandomModel m;
    m.nx = nx;
    m.np = np;
    std::size_t nv = nx + np;
    for (std::size_t i = 0; i < nx; ++i) m.names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < np; ++i) m.names.push_back("p" + std::to_string(i));
    for (std::size_t i = 0; i < nx; ++i) m.f.push_back(sa::testing::random_poly(g, nv, 3, 2));
    m.y = OPoly::variable(nv, 0) + sa::testing::random_poly(g, nv, 2, 1);
    if (m.y.is_zero()) m.y = OPoly::variable(nv, 0);
    return m;
}

// Rows d/dz L^k y for k = 0 .. n-1 along (f, 0).
std::vector<std::vector<OPoly>> oracle_oi(const RandomModel& m) {
    std::size_t nv = m.nx + m.np;
    std::vector<std::vector<OPoly>> rows;
    OPoly h = m.y;
    for (std::size_t k = 0; k < nv; ++k) {
        std::vector<OPoly> row;
        for (std::size_t j = 0; j < nv; ++j) row.push_back(h.deriv(j));
        rows.push_back(row);
        OPoly next(nv);
        for (std::size_t j = 0; j < m.nx; ++j) next = next + row[j] * m.f[j];
        h = next;
    }
    return rows;
}

}  // namespace

TEST_CASE("SIO agrees with exact elimination on random polynomial models") {
    auto g = sa::testing::rng_for(2026);
    int identifiable = 0, non_identifiable = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t nx = 1 + static_cast<std::size_t>(trial % 3);
        std::size_t np = std::min<std::size_t>(static_cast<std::size_t>(trial % 4), 4 - nx);
        RandomModel rm = make_model(g, nx, np);
        CAPTURE(rm.text());
        auto rows = oracle_oi(rm);
        std::size_t full = sa::testing::bareiss_rank(rows);
        auto rep = analyze_sio(model::parse_model(rm.text()), "rnd");
        CHECK(rep.terminal_rank == full);
        for (std::size_t j = 0; j < nx + np; ++j) {
            std::size_t del = sa::testing::bareiss_rank(rows, static_cast<long>(j));
            bool recoverable = del < full;
            const auto& got = j < nx ? rep.states[j] : rep.params[j - nx];
            CHECK(got.first == rm.names[j]);
            if (j < nx) {
                CHECK(got.second == (recoverable ? Classification::observable : Classification::non_observable));
            } else {
                CHECK(got.second == (recoverable ? Classification::identifiable : Classification::non_identifiable));
                (recoverable ? identifiable : non_identifiable)++;
            }
        }
    }
    // Both outcomes occur, so the comparison is not vacuous.
    CHECK(identifiable > 0);
    CHECK(non_identifiable > 0);
}
