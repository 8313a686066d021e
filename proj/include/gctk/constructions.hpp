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
#include <string>
#include <vector>

#include "gctk/decomposition.hpp"
#include "gctk/graph.hpp"

namespace gctk {

/// +/-1 matrix with pairwise orthogonal rows: H H^T = order * I (checked
/// exactly on construction).
struct HadamardMatrix {
    int order = 0;
    std::vector<std::vector<int8_t>> entries;
};

/// Sylvester doubling, Paley type I (order p+1, p prime = 3 mod 4) and
/// Kronecker products of available factors. Returns nothing when no covered
/// construction applies; never fabricates.
std::optional<HadamardMatrix> hadamard(int order);
bool is_hadamard(const HadamardMatrix& h);

/// 0 rows for edgeless graphs, 1 row for complete graphs, 2 rows for
/// K_a u K_b and K_{a,b} with (a,b) != (1,1); nothing otherwise.
std::optional<Decomposition> detect_small_gc(const Graph& g);

/// Spin-biclique cover of a clique on q_set (all other vertices isolated).
/// q + 2 rows for q <= n/2; otherwise built through the complement of the
/// clique for min{q, n-q} + 2 rows after simplification.
Decomposition clique_decomposition(const Graph& g, const VertexSet& q_set);

/// (1 - q/4) all-ones + sum of (1/4) SB(S_i) over a clique partition.
Decomposition disjoint_cliques_decomposition(const std::vector<VertexSet>& parts, int n);

/// n+1 rows (n when the all-ones weight vanishes). Even cycles go through
/// two alternating perfect matchings, odd cycles through the explicit
/// edge-biclique formula; both merge to the same canonical rows.
Decomposition cycle_decomposition(int n);

/// Column restriction of cycle_decomposition(n+1) to the first n vertices.
Decomposition path_decomposition(int n);

/// q rows via an order-q Hadamard matrix with duplicated columns when one
/// exists, else the q+1-row disjoint-cliques fallback.
Decomposition perfect_matching_decomposition(int q);

/// 3 rows plus the shared all-ones row for one star embedded in n vertices.
Decomposition star_decomposition(int center, const VertexSet& leaves, int n);

/// Greedy edge partition into stars at max-degree vertices; <= 3n - 2 rows.
Decomposition union_of_stars(const Graph& g);

/// Column classes of the double-star template: two centers plus the four
/// neighbor classes (exclusive of v1, common, exclusive of v2, the rest).
struct DoubleStarClasses {
    int v1 = 0;
    int v2 = 0;
    VertexSet v3, v4, v5, v6;
};

/// Expands the six-row double-star template by column classes; trace 0, so
/// intra-class pairs get weight zero.
Decomposition double_star_decomposition(const DoubleStarClasses& classes, int n);

/// Greedy elimination of non-adjacent center pairs, residual clique finished
/// by clique_decomposition; <= 2.5n + 2 rows.
Decomposition union_of_double_stars(const Graph& g);

struct CompileResult {
    Decomposition dec;
    std::string method;
    int rows = 0;
    int lower_bound = 0;
    bool verified = false;

    /// Certified minimal: the verified row count meets the lower bound.
    bool optimal() const { return rows == lower_bound; }
};

/// Runs the detector, family recognizers, both greedy unions and (when the
/// complement is sparser) the complement route; returns the verified
/// decomposition with fewest rows. Tie-break: stable method order
/// detector, clique, pm-hadamard, cycle, path, stars, double-stars,
/// complement.
CompileResult compile_auto(const Graph& g);

/// Single named method ("auto" dispatches to compile_auto). Throws
/// InvalidParameter when the method does not apply to the graph.
CompileResult compile_with_method(const Graph& g, const std::string& method);

}  // namespace gctk
