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
#ifndef SA_SYM_NUMBERS_HPP
#define SA_SYM_NUMBERS_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sa::sym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);
std::uint64_t hash_rational(const Rational& q);

// Exact q^k for integer k; throws DivisionByZero for 0^k with k < 0.
Rational pow_rational(const Rational& q, long k);

bool is_prime_u64(std::uint64_t n);

// Arithmetic in F_p for a prime p < 2^63.  2^61 - 1 takes a shift-and-add reduction.
class PrimeField {
public:
    static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

    explicit PrimeField(std::uint64_t p = kMersenne61);

    std::uint64_t modulus() const { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
        if (mersenne_) {
            std::uint64_t lo = static_cast<std::uint64_t>(t) & kMersenne61;
            std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
            std::uint64_t s = lo + hi;
            return s >= p_ ? s - p_ : s;
        }
        return static_cast<std::uint64_t>(t % p_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    // Throws PoleEncountered on zero.
    std::uint64_t inv(std::uint64_t a) const;
    // Signed exponent; negative powers of zero throw PoleEncountered, 0^0 throws ZeroToZero.
    std::uint64_t pow_signed(std::uint64_t a, std::int64_t e) const;

    std::uint64_t from_int(std::int64_t v) const;
    std::uint64_t from_integer(const Integer& v) const;
    // Throws PoleEncountered when the denominator vanishes mod p.
    std::uint64_t from_rational(const Rational& q) const;
    // Representative in (-p/2, p/2].
    std::int64_t balanced(std::uint64_t a) const;

private:
    std::uint64_t p_;
    bool mersenne_;
};

// splitmix64 finalizer; used for structural hashes and for deterministic sampling.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) { return mix64(seed ^ (v + 0x632be59bd9b4e019ULL + (seed << 6) + (seed >> 2))); }

std::uint64_t hash_string(const std::string& s);

}  // namespace sa::sym

#endif
