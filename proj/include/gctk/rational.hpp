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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "gctk/errors.hpp"

namespace gctk {

// All exact arithmetic in the toolkit runs on GMP rationals. mpq_class keeps
// the invariants we need (reduced fraction, positive denominator) as long as
// every value is built through make_rational / parse helpers.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw InvalidParameter("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidParameter("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Renders "num/den", e.g. "-3/4", "5/1".
inline std::string rational_to_slash(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Renders "num" when den == 1, else "num/den".
inline std::string rational_to_compact(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return rational_to_slash(q);
}

/// Accepts "num/den", "num", or a plain decimal ("0.25", "-1.5e-3").
Rational rational_from_string(const std::string& text);

/// True iff the value has a finite decimal expansion (den = 2^a 5^b).
bool decimal_terminates(const Rational& q);

/// Exact decimal when terminating; otherwise 17 significant digits.
/// `exact` (when given) reports whether the rendering was exact.
std::string rational_to_decimal(const Rational& q, bool* exact = nullptr);

double rational_to_double(const Rational& q);

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction convergents/semiconvergents).
Rational snap_to_denominator(double x, long max_den);

}  // namespace gctk
