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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gctk/bitmask.hpp"

namespace gctk {

/// Vertex subsets are bit masks over the 0-indexed internal labels.
/// File formats and the CLI speak 1-indexed labels throughout.
using VertexSet = Bitmask;

/// Simple undirected unweighted graph. Immutable after construction;
/// symmetry, zero diagonal and 0/1 entries hold by construction and are
/// asserted when building from explicit edges.
class Graph {
  public:
    explicit Graph(int n);  // edgeless
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }
    bool edge(int u, int v) const;
    int degree(int v) const { return adj_[v].count(); }
    const Bitmask& neighbors(int v) const { return adj_[v]; }
    std::vector<std::pair<int, int>> edges() const;  // sorted, u < v

    Graph complemented() const;
    Graph induced(const VertexSet& s) const;

    /// Connected components as vertex sets, ordered by lowest member.
    std::vector<VertexSet> components() const;
    bool is_complete() const { return m_ == n_ * (n_ - 1) / 2; }
    /// Every pair inside s is an edge.
    bool is_clique_set(const VertexSet& s) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  private:
    int n_;
    int m_ = 0;
    std::vector<Bitmask> adj_;
};

/// Edge-list document: first line "n m", then m lines "u v" (1-indexed,
/// u < v). Rejects loops, duplicates and out-of-range labels.
Graph parse_graph(const std::string& text);
std::string format_edge_list(const Graph& g);

/// Adjacency-matrix document: n lines of n space-separated 0/1 entries.
Graph parse_adjacency_matrix(const std::string& text);
std::string format_adjacency_matrix(const Graph& g);

Graph generate_complete(int q, int n);  // K_q plus n-q isolated vertices
Graph generate_perfect_matching(int q);  // 2q vertices, edges {1,2},{3,4},...
Graph generate_path(int n);
Graph generate_cycle(int n);
Graph generate_biclique(int a, int b);
Graph generate_disjoint_cliques(const std::vector<int>& sizes);

/// Each pair, in lexicographic order, consumes one draw from a splitmix64
/// stream seeded with `seed`; the pair is an edge iff the draw maps below p
/// in [0,1). Reproducible across platforms.
Graph generate_erdos_renyi(int n, double p, uint64_t seed);

/// splitmix64 step, exposed so that suite seeding is reproducible.
uint64_t splitmix64_next(uint64_t& state);
/// Uniform double in [0,1) from a 64-bit draw (top 53 bits).
double unit_double(uint64_t draw);

}  // namespace gctk
