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

#include "gctk/decomposition.hpp"
#include "gctk/graph.hpp"

namespace gctk {

struct PulseLayer {
    Rational ms_weight;
    Bitmask post_flips;
};

/// Ordered global-coupling layers with inter-layer flip masks. The prologue
/// flips qubits whose first-row sign is -1; the mask after layer p toggles
/// qubits whose sign differs between rows p and p+1; the final mask restores
/// everything, so all masks XOR to zero. The cost-layer angle stays a
/// symbolic scale parameter of the whole program.
struct PulseProgram {
    int n = 0;
    std::string scale = "gamma";
    Bitmask prologue_flips;
    std::vector<PulseLayer> layers;
};

/// Mask/weight transform only; the caller is responsible for verification.
/// Pass `minimize_flips` to greedily reorder layers by nearest flip mask.
PulseProgram emit_pulse_program(const Decomposition& d, bool minimize_flips = false);

/// Verifies the decomposition against g first; throws UnverifiedInput.
PulseProgram emit_pulse_program(const Decomposition& d, const Graph& g,
                                bool minimize_flips = false);

/// Exhaustive check over all 2^n basis states that the accumulated diagonal
/// phase of the program matches the target graph, computed purely from the
/// program's masks and weights. Exact arithmetic; n <= 14.
bool phase_equivalence_check(const PulseProgram& p, const Graph& g);

struct GateCounts {
    long ms_layers = 0;
    long bit_flips = 0;
    long baseline_cnots = 0;  // 2 per edge in the standard compilation
    long baseline_rzs = 0;    // 1 per edge
};

GateCounts gate_counts(const Decomposition& d, const Graph& g);

/// Text format: "N <n>", then "X <qubit-list>" and "MS <weight>" lines,
/// qubits 1-indexed. Empty flip masks emit no X line.
std::string format_circuit(const PulseProgram& p);
std::string circuit_to_json(const PulseProgram& p);

}  // namespace gctk
