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

#include "gctk/circuits.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#include <json.hpp>

#include "gctk/errors.hpp"

namespace gctk {

namespace {

std::vector<WeightedRow> order_rows(const Decomposition& d, bool minimize_flips) {
    std::vector<WeightedRow> rows = d.rows();
    if (!minimize_flips || rows.size() < 3) return rows;
    // Greedy nearest-mask chain starting from the canonical first row.
    std::vector<WeightedRow> out;
    std::vector<bool> used(rows.size(), false);
    int cur = 0;
    used[0] = true;
    out.push_back(rows[0]);
    for (size_t step = 1; step < rows.size(); ++step) {
        int best = -1, best_dist = INT32_MAX;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (used[i]) continue;
            const int dist = (rows[cur].row ^ rows[i].row).count();
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(i);
            }
        }
        used[best] = true;
        out.push_back(rows[best]);
        cur = best;
    }
    return out;
}

}  // namespace

PulseProgram emit_pulse_program(const Decomposition& d, bool minimize_flips) {
    const int n = d.vertex_count();
    PulseProgram p;
    p.n = n;
    p.prologue_flips = Bitmask(n);
    if (d.row_count() == 0) return p;
    const std::vector<WeightedRow> rows = order_rows(d, minimize_flips);
    p.prologue_flips = rows.front().row;
    for (size_t i = 0; i < rows.size(); ++i) {
        const Bitmask post =
            i + 1 < rows.size() ? rows[i].row ^ rows[i + 1].row : rows[i].row;
        p.layers.push_back({rows[i].weight, post});
    }
    return p;
}

PulseProgram emit_pulse_program(const Decomposition& d, const Graph& g, bool minimize_flips) {
    const VerifyReport report = verify(g, d);
    if (!report.feasible)
        throw UnverifiedInput("decomposition does not reproduce the target graph (violation " +
                              rational_to_compact(report.worst_violation) + ")");
    return emit_pulse_program(d, minimize_flips);
}

bool phase_equivalence_check(const PulseProgram& p, const Graph& g) {
    const int n = p.n;
    if (n != g.vertex_count()) throw DimensionMismatch("program and graph widths differ");
    if (n > 14) throw ResourceLimit("phase check enumerates 2^n states; n <= 14 required");
    // State masks per layer, derived from the program alone.
    std::vector<uint64_t> layer_mask;
    uint64_t mask = p.prologue_flips.low_word();
    for (const auto& layer : p.layers) {
        layer_mask.push_back(mask);
        mask ^= layer.post_flips.low_word();
    }
    if (mask != 0) return false;  // flips must cancel end to end
    std::vector<uint64_t> edge_masks;
    for (auto [u, v] : g.edges()) edge_masks.push_back((1ULL << u) | (1ULL << v));

    for (uint64_t x = 0; x < (1ULL << n); ++x) {
        // Program side: with t signs flipped during a layer the all-pairs sum
        // of s_i s_j is ((n - 2t)^2 - n) / 2.
        Rational phase = 0;
        for (size_t l = 0; l < layer_mask.size(); ++l) {
            const int t = std::popcount(layer_mask[l] ^ x);
            const long s = n - 2L * t;
            phase += p.layers[l].ms_weight * make_rational(s * s - n, 2);
        }
        // Target side: edges with equal endpoint bits contribute +1.
        long target = 0;
        for (uint64_t em : edge_masks) target += std::popcount(em & x) % 2 == 0 ? 1 : -1;
        if (phase != Rational(target)) return false;
    }
    return true;
}

GateCounts gate_counts(const Decomposition& d, const Graph& g) {
    GateCounts counts;
    counts.ms_layers = d.row_count();
    const PulseProgram p = emit_pulse_program(d);
    counts.bit_flips = p.prologue_flips.count();
    for (const auto& layer : p.layers) counts.bit_flips += layer.post_flips.count();
    counts.baseline_cnots = 2L * g.edge_count();
    counts.baseline_rzs = g.edge_count();
    return counts;
}

namespace {
void append_flip_line(std::ostringstream& out, const Bitmask& mask) {
    if (mask.none()) return;
    out << "X";
    for (int q : mask.bits()) out << ' ' << q + 1;
    out << '\n';
}
}  // namespace

std::string format_circuit(const PulseProgram& p) {
    std::ostringstream out;
    out << "N " << p.n << '\n';
    append_flip_line(out, p.prologue_flips);
    for (const auto& layer : p.layers) {
        out << "MS " << rational_to_compact(layer.ms_weight) << '\n';
        append_flip_line(out, layer.post_flips);
    }
    return out.str();
}

namespace {
std::vector<int> qubit_list(const Bitmask& mask) {
    std::vector<int> out = mask.bits();
    for (int& q : out) ++q;  // 1-indexed, matching the text format
    return out;
}
}  // namespace

std::string circuit_to_json(const PulseProgram& p) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : p.layers)
        layers.push_back({{"ms_weight", rational_to_slash(layer.ms_weight)},
                          {"post_flips", qubit_list(layer.post_flips)}});
    nlohmann::json doc = {{"n", p.n},
                          {"scale", p.scale},
                          {"prologue_flips", qubit_list(p.prologue_flips)},
                          {"layers", layers}};
    return doc.dump(2) + "\n";
}

}  // namespace gctk
