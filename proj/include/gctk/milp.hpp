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
#include <unordered_map>
#include <utility>
#include <vector>

#include "gctk/constructions.hpp"
#include "gctk/decomposition.hpp"
#include "gctk/graph.hpp"
#include "gctk/rational.hpp"

namespace gctk {

enum class VarKind { binary, integer, continuous };

struct MipVariable {
    std::string name;
    VarKind kind = VarKind::continuous;
    Rational lower, upper;
};

enum class ConstraintSense { le, eq, ge };

struct MipConstraint {
    std::string name;  // "c<tag>_<indices>"
    std::string tag;   // paper constraint number, e.g. "2", "15"
    std::vector<std::pair<Rational, int>> terms;  // coefficient, variable id
    ConstraintSense sense = ConstraintSense::eq;
    Rational rhs;
};

struct MipFlags {
    bool padberg = true;
    bool drop_tautologies = true;
    bool lb_cut = true;
    bool ones_row = false;     // force the all-ones row into the last slot
    long padberg_budget = 0;   // cap on (i,j,k) triples per row slot; 0 = all
};

struct MipModel {
    int n = 0;
    int R = 0;
    Rational big_m;
    MipFlags flags;
    int lb_cut_value = 0;

    std::vector<MipVariable> vars;
    std::vector<MipConstraint> cons;
    std::vector<int> objective;  // b_r variable ids, unit coefficients

    std::unordered_map<std::string, int> index;

    int add_var(std::string name, VarKind kind, Rational lower, Rational upper);
    int var_id(const std::string& name) const;  // -1 when missing
    int require_var(const std::string& name) const;
};

/// Compact MIP for the coupling problem with R row slots. Binary rows P',
/// pair products z, big-M linearized products t, weights w_r, activity
/// indicators b_r, the trace, and lexicographic row-number ordering. Padberg
/// triangle cuts and the spectral lower-bound cut are generated per flags;
/// tautological trace rows are dropped per flags. For n > 40 the row-number
/// ordering is replaced by a first-difference encoding so no coefficient
/// exceeds 2^40.
MipModel build_cmipgc(const Graph& g, int R, const Rational& big_m, MipFlags flags = {});

/// Use the sound but astronomically large weight bound (3n-2)^((3n-1)/2).
Rational sound_big_m(int n);

struct ModelText {
    std::string lp;       // LP interchange format, deterministic
    std::string sidecar;  // "name num/den" lines for inexact decimals
};
ModelText emit_model(const MipModel& m);

/// Internal LP reader covering exactly the dialect emit_model writes.
MipModel parse_model(const std::string& lp_text);

struct WarmStart {
    std::vector<Rational> values;  // by variable id of the paired model
};

struct WarmStartText {
    WarmStart ws;
    std::string text;     // "name value" lines
    std::string sidecar;  // exact rationals for inexact decimals
};

/// Maps a canonical decomposition with exactly R rows onto a full feasible
/// assignment (checked with evaluate before returning).
WarmStartText emit_warmstart(const Decomposition& d, const MipModel& m);

struct EvalReport {
    bool feasible = false;
    Rational max_violation;
    std::vector<std::string> violated;  // constraint names, then bound/kind tags
    Rational objective;
};

/// Exact evaluation of every constraint, variable bound and integrality
/// requirement under a complete assignment.
EvalReport evaluate(const MipModel& m, const std::vector<Rational>& values);

/// "name value" lines; sidecar entries override values by name.
std::unordered_map<std::string, Rational> parse_assignment(const std::string& text,
                                                           const std::string& sidecar = "");

/// Complete id-indexed assignment from a name map. Unknown names are
/// returned through `unknown` when given, else ignored.
std::vector<Rational> assignment_from_map(const MipModel& m,
                                          const std::unordered_map<std::string, Rational>& map,
                                          bool missing_as_zero,
                                          std::vector<std::string>* unknown = nullptr);

/// Reconstructs a decomposition from a solver solution listing: binaries
/// thresholded at 0.5, rows with b_r = 0 dropped, weights snapped to
/// denominators <= 64 and re-verified exactly; falls back to a 1e-6 float
/// check ("mip-numeric") when exact verification fails.
CompileResult ingest_solution(const std::string& text, const Graph& g, const MipModel& m);

struct ModelSize {
    long variables = 0;
    long constraints = 0;
};
/// Closed-form counts the builder must match exactly (n <= 40 encoding).
ModelSize expected_model_size(int n, int R, MipFlags flags);

}  // namespace gctk
