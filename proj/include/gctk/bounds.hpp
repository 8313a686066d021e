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

#include <string>
#include <vector>

#include "gctk/graph.hpp"
#include "gctk/rational.hpp"

namespace gctk {

enum class BoundMethod { numeric, exact };

/// Spectral lower bound n - max eigenvalue multiplicity, with the witness.
struct BoundReport {
    int lower_bound = 0;
    int max_multiplicity = 1;
    double witness_eigenvalue = 0.0;
    std::string witness_exact;  // defining polynomial, exact mode only
    BoundMethod method = BoundMethod::exact;
};

/// Monic characteristic polynomial det(xI - A) with exact integer
/// coefficients, ascending order (coeffs[i] multiplies x^i).
std::vector<Integer> char_poly(const Graph& g);

/// Numeric mode clusters the symmetric eigen-decomposition with absolute
/// tolerance 1e-8 * max(1, spectral radius); it throws NumericalFailure if
/// the eigensolver does not converge. Exact mode takes the maximum root
/// multiplicity of char_poly via a gcd tower.
BoundReport spectral_lower_bound(const Graph& g, BoundMethod mode);

/// Exact for n <= 32, numeric above; numeric failure falls back to exact.
BoundReport spectral_lower_bound(const Graph& g);

std::string format_bound_report(const BoundReport& r);

}  // namespace gctk
