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
#include "sa/sym/print.hpp"

#include <vector>

namespace sa::sym {

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string print(Expr e, int context);

bool negative_term(Expr t) {
    if (t.is_constant()) return t.value() < 0;
    return t.kind() == Kind::product && t.operands()[0].is_constant() && t.operands()[0].value() < 0;
}

std::string wrap(const std::string& s, int prec, int context) { return prec < context ? "(" + s + ")" : s; }

std::string print_constant(const Rational& q, int context) {
    std::string s = to_string(q);
    if (q < 0) return wrap(s, kUnary, context);
    if (denominator(q) != 1) return wrap(s, kProduct, context);
    return s;
}

std::string print_product(Expr e, int context) {
    auto ops = e.operands();
    Rational coef = 1;
    std::size_t start = 0;
    if (ops[0].is_constant()) {
        coef = ops[0].value();
        start = 1;
    }
    bool negative = coef < 0;
    if (negative) coef = -coef;
    std::vector<std::string> num, den;
    if (numerator(coef) != 1) num.push_back(numerator(coef).str());
    if (denominator(coef) != 1) den.push_back(denominator(coef).str());
    for (std::size_t i = start; i < ops.size(); ++i) {
        Expr f = ops[i];
        if (f.kind() == Kind::power && f.exponent().is_constant() && f.exponent().value() < 0) {
            Rational k = -f.exponent().value();
            if (k == 1) {
                den.push_back(print(f.base(), kPower));
            } else {
                den.push_back(print(f.base(), kAtom) + "^" + print_constant(k, kAtom));
            }
        } else {
            num.push_back(print(f, kProduct + 1));
        }
    }
    std::string s;
    if (num.empty()) {
        s = "1";
    } else {
        for (std::size_t i = 0; i < num.size(); ++i) s += (i ? "*" : "") + num[i];
    }
    if (den.size() == 1) {
        s += "/" + den[0];
    } else if (den.size() > 1) {
        s += "/(";
        for (std::size_t i = 0; i < den.size(); ++i) s += (i ? "*" : "") + den[i];
        s += ")";
    }
    if (negative) return wrap("-" + s, kUnary, context);
    return wrap(s, kProduct, context);
}

std::string print_sum(Expr e, int context) {
    std::string s;
    bool first = true;
    for (Expr t : e.operands()) {
        if (first) {
            s = print(t, kSum);
            first = false;
        } else if (negative_term(t)) {
            Pool& pool = t.pool();
            s += " - " + print(pool.neg(t), kProduct);
        } else {
            s += " + " + print(t, kSum);
        }
    }
    return wrap(s, kSum, context);
}

std::string print(Expr e, int context) {
    switch (e.kind()) {
        case Kind::constant: return print_constant(e.value(), context);
        case Kind::symbol: return e.name();
        case Kind::sum: return print_sum(e, context);
        case Kind::product: return print_product(e, context);
        case Kind::power: {
            Expr x = e.exponent();
            std::string ex;
            if (x.is_constant() && x.value() >= 0 && is_integer(x.value())) {
                ex = to_string(x.value());
            } else if (x.is_symbol()) {
                ex = x.name();
            } else {
                ex = "(" + print(x, 0) + ")";
            }
            if (x.is_constant() && x.value() == -1) return wrap("1/" + print(e.base(), kPower), kProduct, context);
            return wrap(print(e.base(), kAtom) + "^" + ex, kPower, context);
        }
        case Kind::log: return "log(" + print(e.argument(), 0) + ")";
    }
    return "?";
}

}  // namespace

std::string to_string(Expr e) { return print(e, 0); }

}  // namespace sa::sym
