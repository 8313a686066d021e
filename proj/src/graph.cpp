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

#include "gctk/graph.hpp"

#include <sstream>

#include "gctk/errors.hpp"

namespace gctk {

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw InvalidParameter("graph needs at least one vertex");
    adj_.assign(n, Bitmask(n));
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidParameter("vertex label out of range");
        if (u == v) throw InvalidParameter("loop edge");
        if (g.adj_[u].test(v)) throw InvalidParameter("duplicate edge");
        g.adj_[u].set(v);
        g.adj_[v].set(u);
        ++g.m_;
    }
    return g;
}

bool Graph::edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidParameter("vertex label out of range");
    return u != v && adj_[u].test(v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adj_[u].test(v)) out.emplace_back(u, v);
    return out;
}

Graph Graph::complemented() const {
    Graph g(n_);
    for (int u = 0; u < n_; ++u) {
        g.adj_[u] = adj_[u].complement();
        g.adj_[u].set(u, false);
    }
    g.m_ = n_ * (n_ - 1) / 2 - m_;
    return g;
}

Graph Graph::induced(const VertexSet& s) const {
    if (s.width() != n_) throw DimensionMismatch("vertex set width differs from graph");
    if (s.none()) throw InvalidParameter("induced subgraph of empty vertex set");
    const std::vector<int> keep = s.bits();
    Graph g(static_cast<int>(keep.size()));
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = a + 1; b < keep.size(); ++b)
            if (adj_[keep[a]].test(keep[b])) {
                g.adj_[a].set(static_cast<int>(b));
                g.adj_[b].set(static_cast<int>(a));
                ++g.m_;
            }
    return g;
}

std::vector<VertexSet> Graph::components() const {
    std::vector<VertexSet> out;
    Bitmask seen(n_);
    for (int root = 0; root < n_; ++root) {
        if (seen.test(root)) continue;
        Bitmask comp(n_);
        std::vector<int> stack{root};
        comp.set(root);
        seen.set(root);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : adj_[v].bits())
                if (!seen.test(u)) {
                    seen.set(u);
                    comp.set(u);
                    stack.push_back(u);
                }
        }
        out.push_back(comp);
    }
    return out;
}

bool Graph::is_clique_set(const VertexSet& s) const {
    const std::vector<int> vs = s.bits();
    for (size_t a = 0; a < vs.size(); ++a)
        for (size_t b = a + 1; b < vs.size(); ++b)
            if (!adj_[vs[a]].test(vs[b])) return false;
    return true;
}

namespace {
long parse_long(const std::string& tok) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw MalformedInput("bad token '" + tok + "'");
    }
    if (pos != tok.size()) throw MalformedInput("bad token '" + tok + "'");
    return v;
}
}  // namespace

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string tok_n, tok_m;
    if (!(in >> tok_n >> tok_m)) throw MalformedInput("missing 'n m' header");
    const long n = parse_long(tok_n), m = parse_long(tok_m);
    if (n < 1) throw MalformedInput("vertex count must be positive");
    if (m < 0) throw MalformedInput("negative edge count");
    std::vector<std::pair<int, int>> edges;
    for (long i = 0; i < m; ++i) {
        std::string tu, tv;
        if (!(in >> tu >> tv)) throw MalformedInput("fewer edges than declared");
        const long u = parse_long(tu), v = parse_long(tv);
        if (u == v) throw MalformedInput("loop edge " + tu + " " + tv);
        if (u < 1 || v < 1 || u > n || v > n) throw MalformedInput("label out of range in '" + tu + " " + tv + "'");
        if (u >= v) throw MalformedInput("edges must satisfy u < v: '" + tu + " " + tv + "'");
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    std::string extra;
    if (in >> extra) throw MalformedInput("trailing content '" + extra + "'");
    try {
        return Graph::from_edges(static_cast<int>(n), edges);
    } catch (const InvalidParameter& e) {
        throw MalformedInput(e.what());
    }
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

Graph parse_adjacency_matrix(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            const long v = parse_long(tok);
            if (v != 0 && v != 1) throw MalformedInput("matrix entries must be 0 or 1");
            row.push_back(static_cast<int>(v));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const size_t n = rows.size();
    if (n == 0) throw MalformedInput("empty adjacency matrix");
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw MalformedInput("adjacency matrix is not square");
        if (rows[i][i] != 0) throw MalformedInput("nonzero diagonal entry");
        for (size_t j = i + 1; j < n; ++j) {
            if (rows[i][j] != rows[j][i]) throw MalformedInput("adjacency matrix not symmetric");
            if (rows[i][j] == 1) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

std::string format_adjacency_matrix(const Graph& g) {
    std::ostringstream out;
    const int n = g.vertex_count();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) out << ' ';
            out << (i != j && g.edge(i, j) ? 1 : 0);
        }
        out << '\n';
    }
    return out.str();
}

Graph generate_complete(int q, int n) {
    if (q < 1 || n < q) throw InvalidParameter("need 1 <= q <= n");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph generate_perfect_matching(int q) {
    if (q < 1) throw InvalidParameter("need q >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < q; ++i) edges.emplace_back(2 * i, 2 * i + 1);
    return Graph::from_edges(2 * q, edges);
}

Graph generate_path(int n) {
    if (n < 1) throw InvalidParameter("need n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

Graph generate_cycle(int n) {
    if (n < 3) throw InvalidParameter("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return Graph::from_edges(n, edges);
}

Graph generate_biclique(int a, int b) {
    if (a < 1 || b < 1) throw InvalidParameter("biclique parts must be nonempty");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
    return Graph::from_edges(a + b, edges);
}

Graph generate_disjoint_cliques(const std::vector<int>& sizes) {
    if (sizes.empty()) throw InvalidParameter("need at least one clique size");
    int n = 0;
    for (int s : sizes) {
        if (s < 1) throw InvalidParameter("clique sizes must be positive");
        n += s;
    }
    std::vector<std::pair<int, int>> edges;
    int base = 0;
    for (int s : sizes) {
        for (int u = 0; u < s; ++u)
            for (int v = u + 1; v < s; ++v) edges.emplace_back(base + u, base + v);
        base += s;
    }
    return Graph::from_edges(n, edges);
}

uint64_t splitmix64_next(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_double(uint64_t draw) {
    return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

Graph generate_erdos_renyi(int n, double p, uint64_t seed) {
    if (n < 1) throw InvalidParameter("need n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("need p in [0,1]");
    uint64_t state = seed;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unit_double(splitmix64_next(state)) < p) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

}  // namespace gctk
