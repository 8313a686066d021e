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

#include <optional>
#include <vector>

#include "gctk/decomposition.hpp"
#include "gctk/graph.hpp"
#include "gctk/rational.hpp"

namespace gctk {

/// One row per vertex pair i < j: the row is P_i ⊙ P_j over the chosen sign
/// rows and the right-hand side is A[i][j].
struct LinearSystem {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rational>> b;  // rows x cols
    std::vector<Rational> c;               // rows
};

/// Build the pair system for a fixed set of candidate sign rows.
LinearSystem pair_system(const Graph& g, const std::vector<SignRow>& sign_rows);

/// Exact solve via fraction-free (Bareiss) elimination. Returns any solution
/// when the system is consistent (free variables pinned to zero), nothing
/// otherwise. Zero entries in the solution are permitted.
std::optional<std::vector<Rational>> solve_rational_system(const LinearSystem& sys);

struct BruteForceOptions {
    std::optional<int> k_start;    // default: max(1, spectral lower bound)
    std::optional<int> k_max;      // default: ceil(2.5 n + 2)
    bool paper_faithful = false;   // start at k = 1 regardless of the bound
    std::optional<double> time_limit_s;
    int n_cap = 8;                 // enumeration is exponential in n
    bool override_cap = false;
    int threads = 0;               // 0 = hardware concurrency
};

struct BruteForceResult {
    int gc = 0;
    Decomposition dec;
};

/// Exhaustive minimum search: for k ascending, enumerate all sets of k
/// distinct sign rows with first entry +1 in ascending row-number order and
/// return at the first consistent pair system. The result is a certified
/// optimum and always verifies exactly. Returns nothing on time limit.
std::optional<BruteForceResult> brute_force_gc(const Graph& g, const BruteForceOptions& opts = {});

/// True iff no k-row solution exists (full enumeration of level k).
bool certify_infeasible_k(const Graph& g, int k, const BruteForceOptions& opts = {});

}  // namespace gctk
