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

#include "gctk/constructions.hpp"

#include <algorithm>

#include "gctk/bounds.hpp"
#include "gctk/errors.hpp"

namespace gctk {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

HadamardMatrix sylvester_double(const HadamardMatrix& h) {
    const int q = h.order;
    HadamardMatrix out;
    out.order = 2 * q;
    out.entries.assign(2 * q, std::vector<int8_t>(2 * q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            out.entries[i][j] = h.entries[i][j];
            out.entries[i][j + q] = h.entries[i][j];
            out.entries[i + q][j] = h.entries[i][j];
            out.entries[i + q][j + q] = static_cast<int8_t>(-h.entries[i][j]);
        }
    return out;
}

HadamardMatrix paley_type1(int q) {
    // q = p + 1 for a prime p = 3 (mod 4): H = I + S with S the bordered
    // Jacobsthal matrix.
    const int p = q - 1;
    std::vector<int8_t> chi(p, 0);
    for (int a = 1; a < p; ++a) chi[(a * a) % p] = 1;
    for (int a = 1; a < p; ++a)
        if (chi[a] == 0) chi[a] = -1;
    HadamardMatrix h;
    h.order = q;
    h.entries.assign(q, std::vector<int8_t>(q));
    h.entries[0][0] = 1;
    for (int j = 1; j < q; ++j) {
        h.entries[0][j] = 1;
        h.entries[j][0] = -1;
    }
    for (int i = 1; i < q; ++i)
        for (int j = 1; j < q; ++j) {
            if (i == j) {
                h.entries[i][j] = 1;
                continue;
            }
            h.entries[i][j] = chi[((j - i) % p + p) % p];
        }
    return h;
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b) {
    HadamardMatrix out;
    out.order = a.order * b.order;
    out.entries.assign(out.order, std::vector<int8_t>(out.order));
    for (int i = 0; i < out.order; ++i)
        for (int j = 0; j < out.order; ++j)
            out.entries[i][j] = static_cast<int8_t>(a.entries[i / b.order][j / b.order] *
                                                    b.entries[i % b.order][j % b.order]);
    return out;
}

SignRow all_ones_row(int n) { return SignRow(n); }

void append_sb(Decomposition& d, const VertexSet& cut, const Rational& w) {
    d.append(biclique_row(cut), w);
}

// Cycle/path content is label-independent: all-ones plus one edge biclique
// per edge (plus endpoint singletons for paths).
Decomposition cycle_rows_for_edges(const Graph& g) {
    const int n = g.vertex_count();
    Decomposition d(n);
    d.append(all_ones_row(n), make_rational(8 - n, 4));
    for (auto [u, v] : g.edges()) append_sb(d, VertexSet::with_bits(n, {u, v}), make_rational(1, 4));
    return d;
}

Decomposition path_rows_for_order(const Graph& g, const std::vector<int>& order) {
    const int n = g.vertex_count();
    Decomposition d(n);
    d.append(all_ones_row(n), make_rational(8 - (n + 1), 4));
    for (auto [u, v] : g.edges()) append_sb(d, VertexSet::with_bits(n, {u, v}), make_rational(1, 4));
    append_sb(d, VertexSet::with_bits(n, {order.front()}), make_rational(1, 4));
    append_sb(d, VertexSet::with_bits(n, {order.back()}), make_rational(1, 4));
    return d;
}

constexpr int8_t kDoubleStarSigns[6][6] = {
    {+1, +1, +1, +1, +1, +1},
    {+1, +1, +1, +1, -1, -1},
    {+1, +1, +1, -1, -1, +1},
    {+1, +1, -1, -1, -1, -1},
    {+1, -1, +1, -1, -1, +1},
    {+1, -1, -1, -1, +1, +1},
};
constexpr int kDoubleStarWeightNum[6] = {1, 1, -1, -1, 1, -1};

// Residual adjacency that the greedy passes mutate.
struct Residual {
    std::vector<Bitmask> adj;
    long edges = 0;

    explicit Residual(const Graph& g) : adj(g.vertex_count(), Bitmask(g.vertex_count())) {
        for (int v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
        edges = g.edge_count();
    }
    int degree(int v) const { return adj[v].count(); }
    void isolate(int v) {
        edges -= degree(v);
        for (int u : adj[v].bits()) adj[u].set(v, false);
        adj[v] = Bitmask(static_cast<int>(adj.size()));
    }
    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        for (size_t u = 0; u < adj.size(); ++u)
            for (int v : adj[u].bits())
                if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
        return out;
    }
};

bool is_cycle_graph(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 3 || g.edge_count() != n) return false;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != 2) return false;
    return g.components().size() == 1;
}

// Returns the path order when g is a spanning path on >= 2 vertices.
std::optional<std::vector<int>> path_order(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2 || g.edge_count() != n - 1) return std::nullopt;
    int start = -1;
    for (int v = 0; v < n; ++v) {
        const int d = g.degree(v);
        if (d > 2 || d == 0) return std::nullopt;
        if (d == 1 && start < 0) start = v;
    }
    if (start < 0) return std::nullopt;
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (static_cast<int>(order.size()) < n) {
        int next = -1;
        for (int u : g.neighbors(cur).bits())
            if (u != prev) {
                next = u;
                break;
            }
        if (next < 0) return std::nullopt;
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

}  // namespace

bool is_hadamard(const HadamardMatrix& h) {
    if (h.order < 1 || static_cast<int>(h.entries.size()) != h.order) return false;
    for (const auto& row : h.entries) {
        if (static_cast<int>(row.size()) != h.order) return false;
        for (int8_t e : row)
            if (e != 1 && e != -1) return false;
    }
    for (int i = 0; i < h.order; ++i)
        for (int j = i; j < h.order; ++j) {
            long dot = 0;
            for (int k = 0; k < h.order; ++k)
                dot += static_cast<long>(h.entries[i][k]) * h.entries[j][k];
            if (dot != (i == j ? h.order : 0)) return false;
        }
    return true;
}

std::optional<HadamardMatrix> hadamard(int order) {
    if (order < 1) throw InvalidParameter("Hadamard order must be positive");
    std::optional<HadamardMatrix> result;
    if (order == 1) {
        result = HadamardMatrix{1, {{1}}};
    } else if (order == 2) {
        result = HadamardMatrix{2, {{1, 1}, {1, -1}}};
    } else if (order % 4 != 0) {
        return std::nullopt;  // only 1, 2 and multiples of 4 exist
    } else {
        if (order % 2 == 0) {
            if (auto half = hadamard(order / 2)) result = sylvester_double(*half);
        }
        if (!result && is_prime(order - 1) && (order - 1) % 4 == 3) result = paley_type1(order);
        if (!result) {
            for (int d = 4; d * d <= order && !result; d += 4) {
                if (order % d != 0) continue;
                auto a = hadamard(d);
                if (!a) continue;
                auto b = hadamard(order / d);
                if (b) result = kronecker(*a, *b);
            }
        }
        if (!result) return std::nullopt;
    }
    if (!is_hadamard(*result)) throw Error("internal: constructed matrix is not Hadamard");
    return result;
}

std::optional<Decomposition> detect_small_gc(const Graph& g) {
    const int n = g.vertex_count();
    if (g.edge_count() == 0) return Decomposition(n);
    if (g.is_complete()) {
        Decomposition d(n);
        d.append(all_ones_row(n), 1);
        return d;
    }
    const auto comps = g.components();
    if (comps.size() == 2 && g.is_clique_set(comps[0]) && g.is_clique_set(comps[1])) {
        Decomposition d(n);
        append_sb(d, comps[0], make_rational(1, 2));
        d.append(all_ones_row(n), make_rational(1, 2));
        return simplify(d);
    }
    const Graph co = g.complemented();
    const auto co_comps = co.components();
    if (co_comps.size() == 2 && co.is_clique_set(co_comps[0]) && co.is_clique_set(co_comps[1])) {
        Decomposition d(n);
        append_sb(d, co_comps[0], make_rational(-1, 2));
        d.append(all_ones_row(n), make_rational(1, 2));
        return simplify(d);
    }
    return std::nullopt;
}

Decomposition clique_decomposition(const Graph& g, const VertexSet& q_set) {
    const int n = g.vertex_count();
    if (q_set.width() != n) throw DimensionMismatch("q_set width differs from graph");
    const int q = q_set.count();
    if (q < 1) throw PreconditionViolation("clique set is empty");
    if (!g.is_clique_set(q_set)) throw PreconditionViolation("q_set is not a clique");
    if (g.edge_count() != q * (q - 1) / 2)
        throw PreconditionViolation("vertices outside q_set must be isolated");

    Decomposition d(n);
    if (2 * q <= n) {
        for (int i : q_set.bits()) append_sb(d, VertexSet::with_bits(n, {i}), make_rational(-1, 4));
        append_sb(d, q_set, make_rational(1, 4));
        d.append(all_ones_row(n), make_rational(q - 1, 4));
        return d;
    }
    // Sparse side: K_q u K_{n-q} costs two rows; subtract the solution of the
    // complementary clique, whose rows overlap the two.
    append_sb(d, q_set, make_rational(1, 2));
    d.append(all_ones_row(n), make_rational(1, 2));
    const VertexSet rest = q_set.complement();
    const int qc = rest.count();
    if (qc >= 1) {
        for (int i : rest.bits()) append_sb(d, VertexSet::with_bits(n, {i}), make_rational(1, 4));
        append_sb(d, rest, make_rational(-1, 4));
        d.append(all_ones_row(n), make_rational(-(qc - 1), 4));
    }
    return d;
}

Decomposition disjoint_cliques_decomposition(const std::vector<VertexSet>& parts, int n) {
    Bitmask seen(n);
    for (const auto& p : parts) {
        if (p.width() != n) throw DimensionMismatch("part width differs from n");
        if (p.none()) throw PreconditionViolation("empty part");
        if (!(p & seen).none()) throw PreconditionViolation("parts overlap");
        seen = seen | p;
    }
    if (!seen.all()) throw PreconditionViolation("parts must cover all vertices");
    const int q = static_cast<int>(parts.size());
    Decomposition d(n);
    d.append(all_ones_row(n), make_rational(4 - q, 4));
    for (const auto& p : parts) append_sb(d, p, make_rational(1, 4));
    return d;
}

Decomposition cycle_decomposition(int n) {
    if (n < 3) throw InvalidParameter("cycle needs n >= 3");
    if (n % 2 == 0) {
        // Alternating edges form two perfect matchings over all n vertices.
        std::vector<VertexSet> even_parts, odd_parts;
        for (int i = 0; i < n; i += 2)
            even_parts.push_back(VertexSet::with_bits(n, {i, (i + 1) % n}));
        for (int i = 1; i < n; i += 2)
            odd_parts.push_back(VertexSet::with_bits(n, {i, (i + 1) % n}));
        return simplify(combine(disjoint_cliques_decomposition(even_parts, n),
                                disjoint_cliques_decomposition(odd_parts, n), false));
    }
    Decomposition d(n);
    d.append(all_ones_row(n), make_rational(8 - n, 4));
    for (int i = 0; i + 1 < n; ++i)
        append_sb(d, VertexSet::with_bits(n, {i, i + 1}), make_rational(1, 4));
    append_sb(d, VertexSet::with_bits(n, {0, n - 1}), make_rational(1, 4));
    return simplify(d);
}

Decomposition path_decomposition(int n) {
    if (n < 1) throw InvalidParameter("path needs n >= 1");
    if (n == 1) return Decomposition(1);
    VertexSet keep = VertexSet::full(n + 1);
    keep.set(n, false);
    return restrict_to(cycle_decomposition(n + 1), keep);
}

Decomposition perfect_matching_decomposition(int q) {
    if (q < 1) throw InvalidParameter("need q >= 1");
    const int n = 2 * q;
    if (auto h = hadamard(q)) {
        Decomposition d(n);
        for (int r = 0; r < q; ++r) {
            SignRow row(n);
            for (int c = 0; c < q; ++c)
                if (h->entries[r][c] == -1) {
                    row.set(2 * c);
                    row.set(2 * c + 1);
                }
            d.append(std::move(row), make_rational(1, q));
        }
        return d;
    }
    std::vector<VertexSet> parts;
    for (int i = 0; i < q; ++i) parts.push_back(VertexSet::with_bits(n, {2 * i, 2 * i + 1}));
    return disjoint_cliques_decomposition(parts, n);
}

Decomposition star_decomposition(int center, const VertexSet& leaves, int n) {
    if (leaves.width() != n) throw DimensionMismatch("leaf set width differs from n");
    if (center < 0 || center >= n) throw PreconditionViolation("center out of range");
    if (leaves.none()) throw PreconditionViolation("star needs at least one leaf");
    if (leaves.test(center)) throw PreconditionViolation("center cannot be a leaf");
    Decomposition d(n);
    append_sb(d, VertexSet::with_bits(n, {center}), make_rational(-1, 4));
    append_sb(d, leaves, make_rational(-1, 4));
    VertexSet closed = leaves;
    closed.set(center);
    append_sb(d, closed, make_rational(1, 4));
    d.append(all_ones_row(n), make_rational(1, 4));
    return d;
}

Decomposition union_of_stars(const Graph& g) {
    const int n = g.vertex_count();
    Residual res(g);
    Decomposition acc(n);
    while (res.edges > 0) {
        int center = 0;
        for (int v = 1; v < n; ++v)
            if (res.degree(v) > res.degree(center)) center = v;
        const Decomposition star = star_decomposition(center, res.adj[center], n);
        for (const auto& r : star.rows()) acc.append(r.row, r.weight);
        res.isolate(center);
    }
    return simplify(acc);
}

Decomposition double_star_decomposition(const DoubleStarClasses& classes, int n) {
    if (classes.v1 == classes.v2) throw PreconditionViolation("centers must differ");
    for (int v : {classes.v1, classes.v2})
        if (v < 0 || v >= n) throw PreconditionViolation("center out of range");
    Bitmask seen(n);
    seen.set(classes.v1);
    seen.set(classes.v2);
    for (const VertexSet* part : {&classes.v3, &classes.v4, &classes.v5, &classes.v6}) {
        if (part->width() != n) throw DimensionMismatch("class width differs from n");
        if (!(*part & seen).none()) throw PreconditionViolation("classes are not disjoint");
        seen = seen | *part;
    }
    if (!seen.all()) throw PreconditionViolation("classes must cover all vertices");

    std::vector<int> class_of(n, -1);
    class_of[classes.v1] = 0;
    class_of[classes.v2] = 1;
    const VertexSet* sets[4] = {&classes.v3, &classes.v4, &classes.v5, &classes.v6};
    for (int s = 0; s < 4; ++s)
        for (int v : sets[s]->bits()) class_of[v] = s + 2;

    Decomposition d(n);
    for (int p = 0; p < 6; ++p) {
        SignRow row(n);
        for (int v = 0; v < n; ++v)
            if (kDoubleStarSigns[p][class_of[v]] == -1) row.set(v);
        d.append(std::move(row), make_rational(kDoubleStarWeightNum[p], 4));
    }
    return d;
}

Decomposition union_of_double_stars(const Graph& g) {
    const int n = g.vertex_count();
    Residual res(g);
    Bitmask s = Bitmask::full(n);
    Decomposition acc(n);
    while (res.edges > 0) {
        // Best non-adjacent pair in S by eliminated edges, lexicographic ties.
        int best_u = -1, best_v = -1, best_score = -1;
        const std::vector<int> members = s.bits();
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = a + 1; b < members.size(); ++b) {
                const int u = members[a], v = members[b];
                if (res.adj[u].test(v)) continue;
                const int score = res.degree(u) + res.degree(v);
                if (score > best_score) {
                    best_score = score;
                    best_u = u;
                    best_v = v;
                }
            }
        if (best_u < 0) break;  // S induces a clique
        DoubleStarClasses cls;
        cls.v1 = best_u;
        cls.v2 = best_v;
        cls.v4 = res.adj[best_u] & res.adj[best_v];
        cls.v3 = res.adj[best_u] & cls.v4.complement();
        cls.v5 = res.adj[best_v] & cls.v4.complement();
        Bitmask used = cls.v3 | cls.v4 | cls.v5;
        used.set(best_u);
        used.set(best_v);
        cls.v6 = used.complement();
        const Decomposition ds = double_star_decomposition(cls, n);
        for (const auto& r : ds.rows()) acc.append(r.row, r.weight);
        res.isolate(best_u);
        res.isolate(best_v);
        s.set(best_u, false);
        s.set(best_v, false);
    }
    if (res.edges > 0) {
        // Only pairs inside S are ever adjacent at this point, so S carries
        // every remaining edge and induces a clique.
        const Graph residual_graph = Graph::from_edges(n, res.edge_list());
        const Decomposition tail = clique_decomposition(residual_graph, s);
        for (const auto& r : tail.rows()) acc.append(r.row, r.weight);
    }
    return simplify(acc);
}

namespace {

struct Candidate {
    std::string method;
    Decomposition dec;
};

const char* kMethodOrder[] = {"detector", "clique",       "pm-hadamard", "cycle",
                              "path",     "double-stars", "stars",       "complement"};

int method_rank(const std::string& m) {
    for (size_t i = 0; i < std::size(kMethodOrder); ++i)
        if (m == kMethodOrder[i]) return static_cast<int>(i);
    return static_cast<int>(std::size(kMethodOrder));
}

std::vector<Candidate> collect_candidates(const Graph& g, bool allow_complement) {
    const int n = g.vertex_count();
    std::vector<Candidate> out;
    auto add = [&](const std::string& method, Decomposition d) {
        Decomposition canon = simplify(d);
        if (!verify(g, canon).feasible)
            throw Error("internal: construction '" + method + "' failed verification");
        out.push_back({method, std::move(canon)});
    };

    if (auto d = detect_small_gc(g)) add("detector", std::move(*d));

    const auto comps = g.components();
    const bool all_cliques =
        std::all_of(comps.begin(), comps.end(), [&](const VertexSet& c) { return g.is_clique_set(c); });
    if (all_cliques && g.edge_count() > 0) {
        int nontrivial = 0, which = -1;
        for (size_t i = 0; i < comps.size(); ++i)
            if (comps[i].count() > 1) {
                ++nontrivial;
                which = static_cast<int>(i);
            }
        Decomposition best = simplify(disjoint_cliques_decomposition(comps, n));
        if (nontrivial == 1) {
            Decomposition alt = simplify(clique_decomposition(g, comps[which]));
            if (alt.row_count() < best.row_count()) best = std::move(alt);
        }
        add("clique", std::move(best));

        bool perfect_matching = true;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) != 1) perfect_matching = false;
        if (perfect_matching) {
            const int q = n / 2;
            if (auto h = hadamard(q)) {
                // Hadamard column c drives both endpoints of the c-th pair.
                const std::vector<std::pair<int, int>> pairs = g.edges();
                Decomposition d(n);
                for (int r = 0; r < q; ++r) {
                    SignRow row(n);
                    for (int c = 0; c < q; ++c)
                        if (h->entries[r][c] == -1) {
                            row.set(pairs[c].first);
                            row.set(pairs[c].second);
                        }
                    d.append(std::move(row), make_rational(1, q));
                }
                add("pm-hadamard", std::move(d));
            }
        }
    }

    if (is_cycle_graph(g)) add("cycle", cycle_rows_for_edges(g));
    if (auto order = path_order(g)) add("path", path_rows_for_order(g, *order));

    add("double-stars", union_of_double_stars(g));
    add("stars", union_of_stars(g));

    if (allow_complement) {
        const Graph co = g.complemented();
        if (co.edge_count() < g.edge_count()) {
            auto co_cands = collect_candidates(co, false);
            const Candidate* best = nullptr;
            for (const auto& c : co_cands)
                if (best == nullptr || c.dec.row_count() < best->dec.row_count()) best = &c;
            if (best != nullptr) {
                Decomposition ones(n);
                ones.append(all_ones_row(n), 1);
                add("complement", combine(ones, best->dec, true));
            }
        }
    }
    return out;
}

}  // namespace

CompileResult compile_auto(const Graph& g) {
    auto cands = collect_candidates(g, true);
    const Candidate* best = nullptr;
    for (const auto& c : cands) {
        if (best == nullptr || c.dec.row_count() < best->dec.row_count() ||
            (c.dec.row_count() == best->dec.row_count() &&
             method_rank(c.method) < method_rank(best->method)))
            best = &c;
    }
    const BoundReport lb = spectral_lower_bound(g);
    if (lb.lower_bound > best->dec.row_count())
        throw Error("internal: spectral bound exceeds construction rows");
    CompileResult result{best->dec, best->method, best->dec.row_count(), lb.lower_bound, true};
    return result;
}

CompileResult compile_with_method(const Graph& g, const std::string& method) {
    if (method == "auto") return compile_auto(g);
    auto cands = collect_candidates(g, true);
    for (const auto& c : cands)
        if (c.method == method) {
            const BoundReport lb = spectral_lower_bound(g);
            return CompileResult{c.dec, c.method, c.dec.row_count(), lb.lower_bound, true};
        }
    throw InvalidParameter("method '" + method + "' does not apply to this graph");
}

}  // namespace gctk
