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

#include "gctk/circuits.hpp"
#include "gctk/constructions.hpp"
#include "gctk/errors.hpp"
#include "gctk/oracle.hpp"
#include "test_support.hpp"

using namespace gctk;
using namespace gctk::testsupport;

namespace {
Bitmask xor_of_all_masks(const PulseProgram& p) {
    Bitmask acc = p.prologue_flips;
    for (const auto& layer : p.layers) acc = acc ^ layer.post_flips;
    return acc;
}

long total_flips(const PulseProgram& p) {
    long flips = p.prologue_flips.count();
    for (const auto& layer : p.layers) flips += layer.post_flips.count();
    return flips;
}
}  // namespace

TEST_CASE("single all-ones layer needs no flips") {
    Decomposition d(5);
    d.append(SignRow(5), 1);
    const PulseProgram p = emit_pulse_program(d, generate_complete(5, 5));
    CHECK(p.layers.size() == 1);
    CHECK(p.prologue_flips.none());
    CHECK(p.layers[0].post_flips.none());
    CHECK(format_circuit(p) == "N 5\nMS 1\n");
    CHECK(phase_equivalence_check(p, generate_complete(5, 5)));
}

TEST_CASE("star program: four layers, flips only at sign changes") {
    const Graph star = generate_biclique(1, 3);
    const Decomposition d = star_decomposition(0, Bitmask::with_bits(4, {1, 2, 3}), 4);
    const PulseProgram p = emit_pulse_program(d, star);
    CHECK(p.layers.size() == 4);
    CHECK(p.prologue_flips == d.rows()[0].row);
    for (size_t i = 0; i + 1 < d.rows().size(); ++i)
        CHECK(p.layers[i].post_flips == (d.rows()[i].row ^ d.rows()[i + 1].row));
    CHECK(p.layers.back().post_flips == d.rows().back().row);
    CHECK(xor_of_all_masks(p).none());
    CHECK(phase_equivalence_check(p, star));
}

TEST_CASE("prototype program merges flips below the naive count") {
    const Decomposition d = simplify(prototype_decomposition());
    const PulseProgram p = emit_pulse_program(d, prototype_graph());
    CHECK(p.layers.size() == 6);
    long naive = 0;
    for (const auto& r : d.rows()) naive += 2L * r.row.count();
    CHECK(total_flips(p) < naive);
    CHECK(phase_equivalence_check(p, prototype_graph()));
}

TEST_CASE("phase check is exact and catches perturbations") {
    const Graph g = generate_erdos_renyi(10, 0.5, 808);
    const Decomposition d = union_of_double_stars(g);
    PulseProgram p = emit_pulse_program(d, g);
    CHECK(phase_equivalence_check(p, g));

    PulseProgram tampered_weight = p;
    tampered_weight.layers[2].ms_weight += make_rational(1, 8);
    CHECK_FALSE(phase_equivalence_check(tampered_weight, g));

    PulseProgram tampered_mask = p;
    Bitmask post = tampered_mask.layers[1].post_flips;
    post.set(0, !post.test(0));
    tampered_mask.layers[1].post_flips = post;
    CHECK_FALSE(phase_equivalence_check(tampered_mask, g));

    CHECK_THROWS_AS(phase_equivalence_check(PulseProgram{15, "gamma", Bitmask(15), {}}, Graph(15)),
                    ResourceLimit);
}

TEST_CASE("flip masks always cancel end to end") {
    for (const Graph& g : random_graphs(12, 11, 333)) {
        const CompileResult r = compile_auto(g);
        const PulseProgram p = emit_pulse_program(r.dec, g);
        CHECK(xor_of_all_masks(p).none());
        CHECK(p.layers.size() == static_cast<size_t>(r.dec.row_count()));
        CHECK(phase_equivalence_check(p, g));
    }
}

TEST_CASE("emit refuses unverified input") {
    Decomposition wrong(3);
    wrong.append(SignRow(3), 2);
    CHECK_THROWS_AS(emit_pulse_program(wrong, generate_complete(3, 3)), UnverifiedInput);
}

TEST_CASE("gate counts") {
    Decomposition ones(5);
    ones.append(SignRow(5), 1);
    const GateCounts k5 = gate_counts(ones, generate_complete(5, 5));
    CHECK(k5.ms_layers == 1);
    CHECK(k5.baseline_cnots == 20);
    CHECK(k5.baseline_rzs == 10);
    CHECK(k5.bit_flips == 0);

    const GateCounts pm4 =
        gate_counts(perfect_matching_decomposition(4), generate_perfect_matching(4));
    CHECK(pm4.ms_layers == 4);
    CHECK(pm4.baseline_cnots == 8);  // two CNOTs per matched edge

    const auto oracle = brute_force_gc(generate_path(4));
    REQUIRE(oracle.has_value());
    const GateCounts p4 = gate_counts(oracle->dec, generate_path(4));
    CHECK(p4.ms_layers == 5);
    CHECK(p4.baseline_cnots == 6);
}

TEST_CASE("flip-count reordering stays equivalent") {
    const Graph g = generate_erdos_renyi(9, 0.6, 99);
    const CompileResult r = compile_auto(g);
    const PulseProgram plain = emit_pulse_program(r.dec, g);
    const PulseProgram reordered = emit_pulse_program(r.dec, g, /*minimize_flips=*/true);
    CHECK(total_flips(reordered) <= total_flips(plain));
    CHECK(phase_equivalence_check(reordered, g));
    CHECK(xor_of_all_masks(reordered).none());
}

TEST_CASE("circuit text and json formats") {
    const Graph star = generate_biclique(1, 2);
    const CompileResult r = compile_auto(star);
    const PulseProgram p = emit_pulse_program(r.dec, star);
    const std::string text = format_circuit(p);
    CHECK(text.rfind("N 3\n", 0) == 0);
    CHECK(text.find("MS ") != std::string::npos);
    const std::string json = circuit_to_json(p);
    CHECK(json.find("\"scale\": \"gamma\"") != std::string::npos);
    CHECK(json.find("\"n\": 3") != std::string::npos);
}
