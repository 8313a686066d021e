// Copyright 2026 The gctk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gctk/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace gctk {

namespace {
// mpz's default constructor auto-detects the base (leading 0 means octal);
// all toolkit formats are decimal.
Integer parse_integer_base10(const std::string& s) {
    try {
        return Integer(s, 10);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad integer literal '" + s + "'");
    }
}
}  // namespace

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("bad rational literal '" + text + "'");
        const Integer n = parse_integer_base10(num), d = parse_integer_base10(den);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        return make_rational(n, d);
    }
    // Integer or decimal (optionally with exponent).
    bool plain_integer = true;
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-')) {
            plain_integer = false;
            break;
        }
    }
    if (plain_integer) return Rational(parse_integer_base10(text));
    // Decimal: mantissa [.fraction] [e exponent]; converted exactly.
    std::string mantissa = text;
    long exponent10 = 0;
    auto epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        mantissa = text.substr(0, epos);
        const std::string exp_str = text.substr(epos + 1);
        char* end = nullptr;
        exponent10 = std::strtol(exp_str.c_str(), &end, 10);
        if (end == nullptr || *end != '\0' || exp_str.empty())
            throw ParseError("bad exponent in '" + text + "'");
    }
    auto dot = mantissa.find('.');
    std::string digits = mantissa;
    if (dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exponent10 -= static_cast<long>(mantissa.size() - dot - 1);
    }
    if (digits.empty() || digits == "+" || digits == "-")
        throw ParseError("bad decimal literal '" + text + "'");
    const Integer n = parse_integer_base10(digits);
    Integer scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent10)));
    return exponent10 >= 0 ? Rational(n * scale) : make_rational(n, scale);
}

bool decimal_terminates(const Rational& q) {
    Integer den = q.get_den();
    while (den % 2 == 0) den /= 2;
    while (den % 5 == 0) den /= 5;
    return den == 1;
}

std::string rational_to_decimal(const Rational& q, bool* exact) {
    if (decimal_terminates(q)) {
        if (exact != nullptr) *exact = true;
        Integer den = q.get_den();
        unsigned long twos = 0, fives = 0;
        while (den % 2 == 0) { den /= 2; ++twos; }
        while (den % 5 == 0) { den /= 5; ++fives; }
        const unsigned long digits = std::max(twos, fives);
        if (digits == 0) return q.get_num().get_str();
        Integer pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, digits);
        Integer scaled = q.get_num() * pow10 / q.get_den();
        const bool neg = scaled < 0;
        const Integer magnitude = abs(scaled);
        std::string s = magnitude.get_str();
        if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
        s.insert(s.size() - digits, ".");
        // Trailing zeros are kept out so that equal values render identically.
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
        return (neg ? "-" : "") + s;
    }
    if (exact != nullptr) *exact = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", rational_to_double(q));
    return buf;
}

double rational_to_double(const Rational& q) {
    return q.get_d();
}

Rational snap_to_denominator(double x, long max_den) {
    if (max_den < 1) throw InvalidParameter("max_den must be positive");
    if (!std::isfinite(x)) throw InvalidParameter("cannot snap a non-finite value");
    const bool neg = x < 0;
    double v = std::fabs(x);
    // Continued-fraction convergents p/q until the denominator cap.
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_floor = std::floor(frac);
        if (a_floor > 1e17) break;
        const long a = static_cast<long>(a_floor);
        long p2 = a * p1 + p0;
        long q2 = a * q1 + q0;
        if (q2 > max_den) {
            // Best semiconvergent under the cap.
            const long t = (max_den - q0) / q1;
            const long ps = t * p1 + p0, qs = t * q1 + q0;
            const double err_semi = std::fabs(v - static_cast<double>(ps) / static_cast<double>(qs));
            const double err_prev = std::fabs(v - static_cast<double>(p1) / static_cast<double>(q1));
            if (qs >= 1 && err_semi < err_prev) { p1 = ps; q1 = qs; }
            break;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double rem = frac - a_floor;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rational q = make_rational(p1, q1 == 0 ? 1 : q1);
    return neg ? Rational(-q) : q;
}

}  // namespace gctk
