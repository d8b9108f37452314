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
#include "sa/sym/numbers.hpp"

#include <stdexcept>

#include "sa/errors.hpp"

namespace sa::sym {

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw DivisionByZero();
    return Rational(num, den);
}

std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

std::uint64_t hash_rational(const Rational& q) {
    // Hash of the decimal form is slow but constants are interned once.
    return hash_combine(hash_string(numerator(q).str()), hash_string(denominator(q).str()));
}

Rational pow_rational(const Rational& q, long k) {
    if (k == 0) return Rational(1);
    if (q == 0) {
        if (k < 0) throw DivisionByZero();
        return Rational(0);
    }
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Integer n = boost::multiprecision::pow(numerator(q), static_cast<unsigned>(e));
    Integer d = boost::multiprecision::pow(denominator(q), static_cast<unsigned>(e));
    if (k >= 0) return Rational(n, d);
    // boost::rational mishandles a negative denominator here.
    if (n < 0) return Rational(Integer(-d), Integer(-n));
    return Rational(d, n);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses are deterministic for all 64-bit n.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), mersenne_(p == kMersenne61) {
    if (p < 5 || p >= (std::uint64_t{1} << 63) || !is_prime_u64(p))
        throw std::invalid_argument("modulus must be a prime in [5, 2^63)");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a == 0) throw PoleEncountered();
    return pow(a, p_ - 2);
}

std::uint64_t PrimeField::pow_signed(std::uint64_t a, std::int64_t e) const {
    if (e == 0) {
        if (a == 0) throw ZeroToZero();
        return 1;
    }
    if (e > 0) return pow(a, static_cast<std::uint64_t>(e));
    return pow(inv(a), static_cast<std::uint64_t>(-(e + 1)) + 1);
}

std::uint64_t PrimeField::from_int(std::int64_t v) const {
    if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
    std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
    return neg(m % p_);
}

std::uint64_t PrimeField::from_integer(const Integer& v) const {
    Integer r = v % p_;
    if (r < 0) r += p_;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::from_rational(const Rational& q) const {
    std::uint64_t d = from_integer(denominator(q));
    if (d == 0) throw PoleEncountered();
    return mul(from_integer(numerator(q)), inv(d));
}

std::int64_t PrimeField::balanced(std::uint64_t a) const {
    if (a > p_ / 2) return -static_cast<std::int64_t>(p_ - a);
    return static_cast<std::int64_t>(a);
}

}  // namespace sa::sym
