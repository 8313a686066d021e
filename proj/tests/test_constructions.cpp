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

#include <doctest.h>

#include <set>

#include "gctk/bounds.hpp"
#include "gctk/constructions.hpp"
#include "gctk/errors.hpp"
#include "gctk/oracle.hpp"
#include "test_support.hpp"

using namespace gctk;
using namespace gctk::testsupport;

namespace {
void check_verified(const Graph& g, const Decomposition& d) {
    const auto report = verify(g, d);
    CHECK(report.feasible);
    CHECK(report.worst_violation == 0);
}
}  // namespace

TEST_CASE("hadamard constructions") {
    const auto h1 = hadamard(1);
    REQUIRE(h1.has_value());
    CHECK(h1->entries == std::vector<std::vector<int8_t>>{{1}});

    const auto h2 = hadamard(2);
    REQUIRE(h2.has_value());
    CHECK(h2->entries == std::vector<std::vector<int8_t>>{{1, 1}, {1, -1}});

    // Sylvester doubling reproduces the classic order-4 matrix exactly.
    const auto h4 = hadamard(4);
    REQUIRE(h4.has_value());
    CHECK(h4->entries == std::vector<std::vector<int8_t>>{
                             {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});

    for (int order : {3, 5, 6, 10, 15, 18}) CHECK_FALSE(hadamard(order).has_value());
    for (int order : {8, 12, 16, 20, 24, 32, 40, 44, 48}) {
        const auto h = hadamard(order);
        REQUIRE(h.has_value());
        CHECK(is_hadamard(*h));
    }
    CHECK_THROWS_AS(hadamard(0), InvalidParameter);

    // Exact coverage map up to order 100: Sylvester + Paley I + Kronecker
    // reach every admissible order except the six hard ones.
    const std::set<int> uncovered{28, 36, 52, 56, 76, 92, 100};
    for (int order = 1; order <= 100; ++order) {
        const bool admissible = order == 1 || order == 2 || order % 4 == 0;
        const auto h = hadamard(order);
        if (!admissible || uncovered.count(order)) {
            CHECK_FALSE(h.has_value());
        } else {
            REQUIRE(h.has_value());
            CHECK(is_hadamard(*h));
        }
    }
}

TEST_CASE("detector characterizes small coupling numbers") {
    // Complete graphs: one row.
    const auto k7 = detect_small_gc(generate_complete(7, 7));
    REQUIRE(k7.has_value());
    CHECK(k7->row_count() == 1);
    check_verified(generate_complete(7, 7), *k7);

    // K_2 u K_3: two rows.
    const Graph k2k3 = generate_disjoint_cliques({2, 3});
    const auto du = detect_small_gc(k2k3);
    REQUIRE(du.has_value());
    CHECK(du->row_count() == 2);
    check_verified(k2k3, *du);

    // Bicliques, stars included.
    const Graph k23 = generate_biclique(2, 3);
    const auto bi = detect_small_gc(k23);
    REQUIRE(bi.has_value());
    CHECK(bi->row_count() == 2);
    check_verified(k23, *bi);
    const auto star = detect_small_gc(generate_biclique(1, 2));
    REQUIRE(star.has_value());
    CHECK(star->row_count() == 2);

    // Edgeless: zero rows. P_4: nothing.
    const auto empty = detect_small_gc(Graph(4));
    REQUIRE(empty.has_value());
    CHECK(empty->row_count() == 0);
    CHECK_FALSE(detect_small_gc(generate_path(4)).has_value());
}

TEST_CASE("clique decomposition, both routes") {
    // Sparse side (2q <= n): the direct q + 2 rows.
    const Graph k3on6 = generate_complete(3, 6);
    const Decomposition d = clique_decomposition(k3on6, Bitmask::with_bits(6, {0, 1, 2}));
    CHECK(d.row_count() == 5);
    check_verified(k3on6, d);

    // K_1: everything cancels.
    const Graph k1on4 = generate_complete(1, 4);
    CHECK(simplify(clique_decomposition(k1on4, Bitmask::with_bits(4, {0}))).row_count() == 0);

    // Single edge via the formula at q = 2.
    const Graph k2on4 = generate_complete(2, 4);
    const Decomposition e = clique_decomposition(k2on4, Bitmask::with_bits(4, {0, 1}));
    CHECK(e.row_count() == 4);
    check_verified(k2on4, e);

    // Dense side (2q > n) goes through the complement: min{q, n-q} + 2 rows
    // after merging the shared rows.
    const Graph k3on5 = generate_complete(3, 5);
    const Decomposition m = simplify(clique_decomposition(k3on5, Bitmask::with_bits(5, {0, 1, 2})));
    CHECK(m.row_count() <= 4);
    check_verified(k3on5, m);
    const Graph k4on5 = generate_complete(4, 5);
    const Decomposition f = simplify(clique_decomposition(k4on5, Bitmask::with_bits(5, {0, 1, 2, 3})));
    CHECK(f.row_count() <= 3);
    check_verified(k4on5, f);
    CHECK(simplify(clique_decomposition(generate_complete(5, 5), Bitmask::full(5))).row_count() == 1);

    // Full sweep of the row bound at desk scale.
    for (int n = 1; n <= 12; ++n)
        for (int q = 1; q <= n; ++q) {
            const Graph g = generate_complete(q, n);
            VertexSet set(n);
            for (int v = 0; v < q; ++v) set.set(v);
            const Decomposition c = simplify(clique_decomposition(g, set));
            check_verified(g, c);
            CHECK(c.row_count() <= std::min(q, n - q) + 2);
        }

    CHECK_THROWS_AS(clique_decomposition(generate_path(3), Bitmask::with_bits(3, {0, 1, 2})),
                    PreconditionViolation);
    CHECK_THROWS_AS(clique_decomposition(generate_complete(2, 4), Bitmask::with_bits(4, {0, 1, 2})),
                    PreconditionViolation);
}

TEST_CASE("disjoint cliques decomposition") {
    // PM_3 as three 2-cliques: q + 1 = 4 rows.
    const Graph pm3 = generate_perfect_matching(3);
    const Decomposition d = disjoint_cliques_decomposition(
        {Bitmask::with_bits(6, {0, 1}), Bitmask::with_bits(6, {2, 3}), Bitmask::with_bits(6, {4, 5})},
        6);
    CHECK(d.row_count() == 4);
    check_verified(pm3, d);

    // One full part merges down to the single-row complete solution.
    CHECK(simplify(disjoint_cliques_decomposition({Bitmask::full(4)}, 4)).row_count() == 1);
    check_verified(generate_complete(4, 4), disjoint_cliques_decomposition({Bitmask::full(4)}, 4));

    // All singletons: the edgeless graph, weights telescope to zero.
    std::vector<VertexSet> singletons;
    for (int v = 0; v < 5; ++v) singletons.push_back(Bitmask::with_bits(5, {v}));
    check_verified(Graph(5), disjoint_cliques_decomposition(singletons, 5));

    CHECK_THROWS_AS(disjoint_cliques_decomposition({Bitmask::with_bits(3, {0})}, 3),
                    PreconditionViolation);  // does not cover
}

TEST_CASE("cycle and path decompositions") {
    const Decomposition c4 = cycle_decomposition(4);
    CHECK(c4.row_count() <= 5);
    check_verified(generate_cycle(4), c4);

    const Decomposition c5 = cycle_decomposition(5);
    CHECK(c5.row_count() == 6);
    check_verified(generate_cycle(5), c5);

    // n = 8 drops the all-ones row (its weight vanishes).
    CHECK(cycle_decomposition(8).row_count() == 8);
    check_verified(generate_cycle(8), cycle_decomposition(8));

    const Decomposition p4 = path_decomposition(4);
    CHECK(p4.row_count() <= 6);
    check_verified(generate_path(4), p4);
    check_verified(generate_path(2), path_decomposition(2));
    CHECK(path_decomposition(1).row_count() == 0);
    CHECK_THROWS_AS(cycle_decomposition(2), InvalidParameter);
}

TEST_CASE("perfect matching decompositions") {
    const Decomposition q4 = perfect_matching_decomposition(4);
    CHECK(q4.row_count() == 4);
    check_verified(generate_perfect_matching(4), q4);
    // Hadamard-column shape: matched endpoints always share their sign.
    for (const auto& r : q4.rows())
        for (int c = 0; c < 4; ++c) CHECK(r.row.test(2 * c) == r.row.test(2 * c + 1));

    const Decomposition q2 = perfect_matching_decomposition(2);
    CHECK(q2.row_count() == 2);
    check_verified(generate_perfect_matching(2), q2);

    // No order-3 Hadamard matrix: q + 1 fallback.
    const Decomposition q3 = perfect_matching_decomposition(3);
    CHECK(q3.row_count() == 4);
    check_verified(generate_perfect_matching(3), q3);
}

TEST_CASE("star decomposition") {
    const Graph star = generate_biclique(1, 3);  // center 0, leaves 1..3
    const Decomposition d = star_decomposition(0, Bitmask::with_bits(4, {1, 2, 3}), 4);
    CHECK(d.row_count() == 4);
    check_verified(star, d);

    // Single leaf agrees with the clique formula at q = 2 after simplify.
    const Decomposition one_leaf = star_decomposition(0, Bitmask::with_bits(4, {2}), 4);
    const Graph edge = Graph::from_edges(4, {{0, 2}});
    check_verified(edge, one_leaf);
    CHECK(simplify(one_leaf) ==
          simplify(clique_decomposition(edge, Bitmask::with_bits(4, {0, 2}))));

    const Decomposition all_leaves = star_decomposition(2, Bitmask::with_bits(6, {0, 1, 3, 4, 5}), 6);
    check_verified(Graph::from_edges(6, {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {2, 5}}), all_leaves);

    CHECK_THROWS_AS(star_decomposition(0, Bitmask(4), 4), PreconditionViolation);
    CHECK_THROWS_AS(star_decomposition(1, Bitmask::with_bits(4, {1, 2}), 4), PreconditionViolation);
}

TEST_CASE("union of stars") {
    CHECK(union_of_stars(Graph(5)).row_count() == 0);

    // One star covers a star graph; the degenerate full-leaf case collapses
    // to the optimal biclique pair.
    const Graph k13 = generate_biclique(1, 3);
    const Decomposition d = union_of_stars(k13);
    CHECK(d.row_count() <= 4);
    check_verified(k13, d);

    for (const Graph& g : random_graphs(10, 12, 515)) {
        const Decomposition u = union_of_stars(g);
        check_verified(g, u);
        CHECK(u.row_count() <= 3 * g.vertex_count() - 2);
    }
}

TEST_CASE("double-star template") {
    // Prototype classes, one vertex each: exactly the published pair.
    DoubleStarClasses proto;
    proto.v1 = 0;
    proto.v2 = 1;
    proto.v3 = Bitmask::with_bits(6, {2});
    proto.v4 = Bitmask::with_bits(6, {3});
    proto.v5 = Bitmask::with_bits(6, {4});
    proto.v6 = Bitmask::with_bits(6, {5});
    const Decomposition d = double_star_decomposition(proto, 6);
    CHECK(d.row_count() == 6);
    CHECK(d.trace() == 0);
    CHECK(simplify(d) == simplify(prototype_decomposition()));
    check_verified(prototype_graph(), d);

    // Empty common/rest classes: two disjoint stars.
    DoubleStarClasses disjoint;
    disjoint.v1 = 0;
    disjoint.v2 = 1;
    disjoint.v3 = Bitmask::with_bits(6, {2, 3});
    disjoint.v4 = Bitmask(6);
    disjoint.v5 = Bitmask::with_bits(6, {4, 5});
    disjoint.v6 = Bitmask(6);
    check_verified(Graph::from_edges(6, {{0, 2}, {0, 3}, {1, 4}, {1, 5}}),
                   double_star_decomposition(disjoint, 6));

    // Shared leaves only.
    DoubleStarClasses shared;
    shared.v1 = 0;
    shared.v2 = 1;
    shared.v3 = Bitmask(5);
    shared.v4 = Bitmask::with_bits(5, {2, 3, 4});
    shared.v5 = Bitmask(5);
    shared.v6 = Bitmask(5);
    check_verified(Graph::from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}),
                   double_star_decomposition(shared, 5));

    DoubleStarClasses bad = proto;
    bad.v6 = Bitmask(6);
    CHECK_THROWS_AS(double_star_decomposition(bad, 6), PreconditionViolation);
}

TEST_CASE("union of double-stars") {
    CHECK(union_of_double_stars(Graph(4)).row_count() == 0);

    const Decomposition proto = union_of_double_stars(prototype_graph());
    CHECK(proto.row_count() == 6);
    check_verified(prototype_graph(), proto);

    for (const Graph& g : random_graphs(12, 12, 919)) {
        const Decomposition d = union_of_double_stars(g);
        check_verified(g, d);
        CHECK(2 * d.row_count() <= 5 * g.vertex_count() + 4);  // 2.5n + 2
    }

    // Dense graphs exercise the residual-clique tail.
    const Graph dense = generate_complete(6, 6).complemented().complemented();
    const Decomposition tail = union_of_double_stars(dense);
    check_verified(dense, tail);
}

TEST_CASE("compile_auto picks the best verified route") {
    const CompileResult k5 = compile_auto(generate_complete(5, 5));
    CHECK(k5.rows == 1);
    CHECK(k5.lower_bound == 1);
    CHECK(k5.verified);
    CHECK(k5.optimal());
    CHECK_FALSE(compile_auto(generate_path(5)).optimal());  // P_5: lb 4, rows > 4

    const CompileResult c4 = compile_auto(generate_cycle(4));
    CHECK(c4.rows == 2);  // C_4 is the 2x2 biclique
    CHECK(c4.method == "detector");

    const CompileResult er = compile_auto(generate_erdos_renyi(12, 0.45, 2121));
    CHECK(er.verified);
    CHECK(er.lower_bound <= er.rows);
    check_verified(generate_erdos_renyi(12, 0.45, 2121), er.dec);

    // Sparse graphs take the complement route when it wins.
    const Graph co_friendly = generate_complete(9, 9).complemented();  // edgeless
    CHECK(compile_auto(co_friendly).rows == 0);
}

TEST_CASE("compile_auto honors the spectral sandwich on induced subgraphs") {
    uint64_t stream = 2222;
    for (const Graph& g : random_graphs(10, 10, 741)) {
        const CompileResult r = compile_auto(g);
        VertexSet s(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            if (splitmix64_next(stream) % 2) s.set(v);
        if (s.none()) s.set(0);
        CHECK(spectral_lower_bound(g.induced(s)).lower_bound <= r.rows);
    }
}

TEST_CASE("no graph on up to 4 vertices compiles to exactly 3 rows") {
    for (const Graph& g : all_graphs(4)) {
        const CompileResult r = compile_auto(g);
        CHECK(r.rows != 3);
        CHECK(r.verified);
    }
}

TEST_CASE("compile_with_method") {
    CHECK(compile_with_method(generate_cycle(6), "cycle").rows == 7);
    CHECK(compile_with_method(generate_path(5), "path").method == "path");
    CHECK(compile_with_method(generate_perfect_matching(4), "pm-hadamard").rows == 4);
    CHECK(compile_with_method(generate_path(5), "stars").method == "stars");
    CHECK_THROWS_AS(compile_with_method(generate_path(4), "cycle"), InvalidParameter);
    CHECK_THROWS_AS(compile_with_method(generate_path(4), "nope"), InvalidParameter);
}
