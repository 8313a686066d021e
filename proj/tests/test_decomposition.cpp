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

#include "gctk/decomposition.hpp"
#include "gctk/errors.hpp"
#include "test_support.hpp"

using namespace gctk;
using namespace gctk::testsupport;

namespace {

Decomposition all_ones(int n, Rational w) {
    Decomposition d(n);
    d.append(SignRow(n), std::move(w));
    return d;
}

// Random decomposition with quarter-grained weights.
Decomposition random_decomposition(int n, int rows, uint64_t seed) {
    uint64_t stream = seed;
    Decomposition d(n);
    for (int r = 0; r < rows; ++r) {
        SignRow row(n);
        for (int v = 0; v < n; ++v)
            if (splitmix64_next(stream) % 2) row.set(v);
        const long num = static_cast<long>(splitmix64_next(stream) % 9) - 4;
        d.append(row, make_rational(num, 4));
    }
    return d;
}

}  // namespace

TEST_CASE("biclique_row matches the sign-vector definition") {
    CHECK(biclique_row(VertexSet(3)) == SignRow(3));  // empty cut, all +1

    // r_{1,2,3} on n=5 and r_{1,4,6} on n=7 (1-indexed labels).
    const SignRow a = biclique_row(VertexSet::with_bits(5, {0, 1, 2}));
    for (int v = 0; v < 5; ++v) CHECK(sign_at(a, v) == (v < 3 ? -1 : 1));
    const SignRow b = biclique_row(VertexSet::with_bits(7, {0, 3, 5}));
    const int expected[7] = {-1, 1, 1, -1, 1, -1, 1};
    for (int v = 0; v < 7; ++v) CHECK(sign_at(b, v) == expected[v]);
}

TEST_CASE("spin biclique canonical form keeps vertex 0 out of the cut") {
    const auto sb = SpinBiclique::of(VertexSet::with_bits(4, {0, 2}));
    CHECK(sb.cut_set == VertexSet::with_bits(4, {1, 3}));
    const auto sb2 = SpinBiclique::of(VertexSet::with_bits(4, {1, 3}));
    CHECK(sb2.cut_set == sb.cut_set);
}

TEST_CASE("outer product of r_S reproduces the spin-biclique adjacency (n <= 8)") {
    for (int n = 1; n <= 8; ++n) {
        for (uint64_t code = 0; code < (1ULL << n); ++code) {
            VertexSet s(n);
            for (int v = 0; v < n; ++v)
                if ((code >> v) & 1) s.set(v);
            const SignRow row = biclique_row(s);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    // Definition: weight -1 exactly on the cut delta(S).
                    const bool cut = s.test(i) != s.test(j);
                    CHECK(sign_at(row, i) * sign_at(row, j) == (cut ? -1 : 1));
                }
        }
    }
}

TEST_CASE("verify accepts the known pairs") {
    for (int n : {2, 3, 5, 9}) {
        const auto report = verify(generate_complete(n, n), all_ones(n, 1));
        CHECK(report.feasible);
        CHECK(report.worst_violation == 0);
    }
    const auto proto = verify(prototype_graph(), prototype_decomposition());
    CHECK(proto.feasible);
    CHECK(proto.worst_violation == 0);
}

TEST_CASE("verify reports the worst violation") {
    const auto report = verify(generate_complete(3, 3), all_ones(3, 2));
    CHECK_FALSE(report.feasible);
    CHECK(report.worst_violation == 1);
    CHECK(report.offending_pair.has_value());
    CHECK_THROWS_AS(verify(generate_path(3), all_ones(4, 1)), DimensionMismatch);
}

TEST_CASE("gram matrix") {
    const auto g1 = gram(all_ones(2, 1));
    CHECK(g1[0][0] == 1);
    CHECK(g1[0][1] == 1);
    CHECK(g1[1][0] == 1);
    CHECK(g1[1][1] == 1);

    // Prototype: trace 0, so gram equals the adjacency matrix exactly.
    const auto gp = gram(prototype_decomposition());
    const Graph proto = prototype_graph();
    CHECK(prototype_decomposition().trace() == 0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(gp[i][j] == (i == j ? 0 : (proto.edge(i, j) ? 1 : 0)));

    const Decomposition d = random_decomposition(6, 5, 77);
    const auto gm = gram(d);
    for (int i = 0; i < 6; ++i) {
        CHECK(gm[i][i] == d.trace());
        for (int j = 0; j < 6; ++j) CHECK(gm[i][j] == gm[j][i]);
    }
}

TEST_CASE("simplify merges, cancels and canonicalizes") {
    // Two identical rows merge.
    Decomposition d(3);
    d.append(Bitmask::with_bits(3, {1}), make_rational(1, 4));
    d.append(Bitmask::with_bits(3, {1}), make_rational(1, 4));
    const Decomposition s = simplify(d);
    CHECK(s.row_count() == 1);
    CHECK(s.rows()[0].weight == make_rational(1, 2));

    // A row and its flip cancel when the weights are opposite.
    Decomposition c(3);
    c.append(Bitmask::with_bits(3, {1, 2}), make_rational(1, 2));
    c.append(Bitmask::with_bits(3, {0}), make_rational(-1, 2));  // flip of {1,2}
    CHECK(simplify(c).row_count() == 0);

    // Idempotence on canonical input.
    const Decomposition canon = simplify(random_decomposition(7, 6, 3));
    CHECK(canon.is_canonical());
    CHECK(simplify(canon) == canon);
}

TEST_CASE("simplify preserves off-diagonal gram entries and never adds rows") {
    uint64_t stream = 41;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(splitmix64_next(stream) % 7);
        const Decomposition d =
            random_decomposition(n, 1 + static_cast<int>(splitmix64_next(stream) % 8),
                                 splitmix64_next(stream));
        const Decomposition s = simplify(d);
        CHECK(s.row_count() <= d.row_count());
        CHECK(s.is_canonical());
        const auto before = gram(d), after = gram(s);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(before[i][j] == after[i][j]);
    }
}

TEST_CASE("restrict_to keeps columns and feasibility") {
    const Decomposition ones = all_ones(5, 1);
    CHECK(restrict_to(ones, Bitmask::full(5)) == ones);
    CHECK(restrict_to(ones, Bitmask::with_bits(5, {1, 3})).vertex_count() == 2);
    CHECK_THROWS_AS(restrict_to(ones, Bitmask(5)), InvalidParameter);

    // A verified pair stays verified on the induced subgraph.
    const Graph proto = prototype_graph();
    const Decomposition d = prototype_decomposition();
    uint64_t stream = 4242;
    for (int trial = 0; trial < 10; ++trial) {
        VertexSet s(6);
        for (int v = 0; v < 6; ++v)
            if (splitmix64_next(stream) % 2) s.set(v);
        if (s.none()) s.set(0);
        CHECK(verify(proto.induced(s), restrict_to(d, s)).feasible);
    }
}

TEST_CASE("combine models edge-disjoint sums and differences") {
    const Graph proto = prototype_graph();
    const Decomposition d = prototype_decomposition();
    // K_6 = prototype + complement(prototype) as edge-disjoint union.
    Decomposition ones(6);
    ones.append(SignRow(6), 1);
    const Decomposition diff = combine(ones, d, true);
    CHECK(verify(proto.complemented(), diff).feasible);
    const Decomposition sum = combine(diff, d, false);
    CHECK(verify(generate_complete(6, 6), sum).feasible);
    // Combining with an empty decomposition is the identity.
    CHECK(combine(d, Decomposition(6), false) == d);
    CHECK_THROWS_AS(combine(d, Decomposition(5), false), DimensionMismatch);
}

TEST_CASE("vertices in one column class commute in the gram matrix") {
    // Rows where vertices 2 and 3 carry identical columns.
    Decomposition d(5);
    uint64_t stream = 9;
    for (int r = 0; r < 6; ++r) {
        SignRow row(5);
        for (int v = 0; v < 5; ++v)
            if (v != 3 && splitmix64_next(stream) % 2) row.set(v);
        if (row.test(2)) row.set(3);
        d.append(row, make_rational(static_cast<long>(splitmix64_next(stream) % 7) - 3, 4));
    }
    const auto g = gram(d);
    // Swapping the two identical columns permutes gram into itself.
    auto swapped = [&](int v) { return v == 2 ? 3 : (v == 3 ? 2 : v); };
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(g[i][j] == g[swapped(i)][swapped(j)]);
}

TEST_CASE("decomposition document round trip") {
    const Decomposition d = simplify(prototype_decomposition());
    const std::string doc = format_decomposition(d);
    CHECK(parse_decomposition(doc) == d);
    CHECK(format_decomposition(parse_decomposition(doc)) == doc);

    // Canonical header: "n k tr" with the exact trace.
    CHECK(doc.substr(0, doc.find('\n')) == "6 6 0/1");

    CHECK_THROWS_AS(parse_decomposition("3 1 0/1\n"), ParseError);            // short
    CHECK_THROWS_AS(parse_decomposition("3 1 1/1\n1/2 0\n"), ParseError);     // trace mismatch
    CHECK_THROWS_AS(parse_decomposition("bad"), ParseError);
    const std::string json = decomposition_to_json(d);
    CHECK(json.find("\"tr\": \"0/1\"") != std::string::npos);
}
