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
#include <doctest.h>

#include "sa/errors.hpp"
#include "sa/model/corpus.hpp"
#include "sa/model/parser.hpp"
#include "sa/sym/derive.hpp"
#include "sa/sym/print.hpp"
#include "sa/sym/transform.hpp"

using namespace sa;
using namespace sa::model;

namespace {

const char* kBiosd1 =
    "model biosd_1\n"
    "states X, Z\n"
    "params k_in, b, k1, k2, k3, delta\n"
    "inputs U\n"
    "output X\n"
    "ode X' = k_in*U + b - k1*X*Z - delta*X\n"
    "ode Z' = k2*X - k3\n";

}  // namespace

TEST_CASE("parse a small model") {
    OdeModel m = parse_model(kBiosd1);
    CHECK(m.name == "biosd_1");
    CHECK(m.n_x() == 2);
    CHECK(m.params.size() == 6);
    REQUIRE(m.inputs.size() == 1);
    CHECK(m.inputs[0].symbol.name() == "U");
    CHECK(sym::to_string(m.outputs[0]) == "X");
    CHECK(m.state_index("Z") == std::size_t{1});
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_model("model m\nstates x\nparams k\node x' = k*x +\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 4);
        CHECK(e.column > 1);
    }
    CHECK_THROWS_AS(parse_model("states x\node x' = x\n"), SyntaxError);
    CHECK_THROWS_AS(parse_model("model m\nstates x\node x' = x\nfrobnicate\n"), SyntaxError);
}

TEST_CASE("declaration errors") {
    CHECK_THROWS_AS(parse_model("model m\nstates x\node x' = k*x\n"), UndeclaredSymbol);
    CHECK_THROWS_AS(parse_model("model m\nstates x, x\node x' = x\n"), DuplicateDeclaration);
    CHECK_THROWS_AS(parse_model("model m\nstates x\nparams x\node x' = x\n"), DuplicateDeclaration);
    CHECK_THROWS_AS(parse_model("model m\nstates x, y\node x' = y\n"), ArityMismatch);
    CHECK_THROWS_AS(parse_model("model m\nstates x\nparams n\nstates y\node x' = x^y\node y' = 1\n"), InputError);
}

TEST_CASE("render then parse reproduces the model") {
    const char* text =
        "model lets\n"
        "states x, y\n"
        "params a, n\n"
        "inputs u\n"
        "known K = 3/2\n"
        "input_class u zero_above 1\n"
        "let h = a*u^n/(K + u^n)\n"
        "output x + y\n"
        "ode x' = h - x\n"
        "ode y' = x*y - 2.5*y\n";
    ModelSource src = parse_source(text);
    ModelSource again = parse_source(render(src));
    CHECK(render(again) == render(src));
    OdeModel m = instantiate(src);
    OdeModel m2 = parse_model(render(m));
    CHECK(structurally_equal(m, m2));
    CHECK(m.inputs[0].zero_above == std::uint32_t{1});
    CHECK(m.known_constants.size() == 1);
}

TEST_CASE("promoting a let to an input") {
    const char* text =
        "model lets\n"
        "states x\n"
        "params a, K\n"
        "inputs u\n"
        "let h = a*u/(K + u)\n"
        "output x\n"
        "ode x' = h - x\n";
    ModelSource src = parse_source(text);
    OdeModel m = instantiate(src, {"h"});
    REQUIRE(m.inputs.size() == 1);
    CHECK(m.inputs[0].symbol.name() == "h");
    // u, a and K only appeared inside h.
    CHECK_FALSE(m.find("u").has_value());
    for (Expr p : m.params) CHECK(p.name() != "a");
    CHECK_THROWS_AS(instantiate(src, {"nope"}), UnknownVariant);
}

TEST_CASE("input-affine decomposition") {
    OdeModel m = parse_model(kBiosd1);
    AffineDecomposition a = to_affine(m);
    REQUIRE(a.control_fields.size() == 1);
    CHECK(sym::to_string(a.control_fields[0][0]) == "k_in");
    CHECK(a.control_fields[0][1].is_zero());
    auto back = a.reassemble();
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(sym::expand(back[i]) == sym::expand(m.dynamics[i]));

    OdeModel nl = parse_model("model nl\nstates x\ninputs u\node x' = u^2 - x\n");
    try {
        to_affine(nl);
        FAIL("expected NotInputAffine");
    } catch (const NotInputAffine& e) {
        CHECK(std::string(e.what()).find("x") != std::string::npos);
    }
}

TEST_CASE("parameter augmentation") {
    OdeModel m = parse_model(kBiosd1);
    OdeModel a = augment_with_params(m);
    CHECK(a.n_x() == 8);
    CHECK(a.params.empty());
    for (std::size_t i = 2; i < 8; ++i) CHECK(a.dynamics[i].is_zero());
}

TEST_CASE("known constants are substituted") {
    OdeModel m = parse_model("model k\nstates x\nparams a\nknown c = 2\noutput x\node x' = a*c*x\n");
    OdeModel r = m.resolved();
    CHECK(sym::to_string(r.dynamics[0]) == "2*a*x");
}

TEST_CASE("variant slugs") {
    const auto& e = corpus_entry("srna_autorepressor");
    CHECK(variant_slug(e.source, {"u1", "u2"}, {"t", "s"}) == "srna_autorepressor:y=t,s");
    CHECK(variant_slug(e.source, {"gammaR"}, {"T"}) == "srna_autorepressor:u=gammaR:y=T");
    auto ref = find_variant("biosd_2:y=Z1");
    CHECK(ref.entry->id == "biosd_2");
    CHECK_THROWS_AS(find_variant("biosd_2:y=nothing"), UnknownVariant);
    CHECK_THROWS_AS(corpus_entry("none"), UnknownVariant);
}

TEST_CASE("every corpus variant instantiates and validates") {
    std::size_t n = 0;
    for (const auto& e : corpus()) {
        for (const auto& v : e.variants) {
            OdeModel m = e.instantiate(v);
            validate(m);
            CHECK(m.outputs.size() == v.outputs.size());
            ++n;
        }
    }
    CHECK(n == 84);
}
