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
#include <utility>
#include <vector>

#include "gctk/bitmask.hpp"
#include "gctk/graph.hpp"
#include "gctk/rational.hpp"

namespace gctk {

/// A +/-1 sign row over n vertices, stored as the mask of -1 positions.
using SignRow = Bitmask;

inline int sign_at(const SignRow& row, int v) { return row.test(v) ? -1 : 1; }

/// Row-number key of the MIP formulation: the integer whose bit i-1 is the
/// binary image P'_i (1 for sign +1). Canonical decompositions sort rows by
/// this value, ascending.
inline Bitmask row_number_key(const SignRow& row) { return row.complement(); }

/// A complete +/-1-weighted graph whose -1 edges form the cut of `cut_set`.
/// SB(S) and SB(V\S) are the same object; canonical form keeps vertex 0 out
/// of the cut set.
struct SpinBiclique {
    VertexSet cut_set;

    static SpinBiclique of(const VertexSet& s) {
        if (s.test(0)) return SpinBiclique{s.complement()};
        return SpinBiclique{s};
    }
};

/// r_S: sign -1 exactly on the cut side. Two rows (r_S and -r_S) induce the
/// same spin biclique.
SignRow biclique_row(const VertexSet& cut_set);
inline SignRow biclique_row(const SpinBiclique& sb, int n) {
    if (sb.cut_set.width() != n) throw DimensionMismatch("cut set width differs from n");
    return biclique_row(sb.cut_set);
}

struct WeightedRow {
    SignRow row;
    Rational weight;
    bool operator==(const WeightedRow& o) const = default;
};

/// Ordered list of (sign row, exact weight) pairs over a fixed vertex count.
/// Canonical form: every first sign +1, weights nonzero, rows distinct and
/// sorted ascending by the row-number key.
class Decomposition {
  public:
    explicit Decomposition(int n) : n_(n) {
        if (n < 1) throw InvalidParameter("decomposition needs n >= 1");
    }
    static Decomposition from_rows(int n, std::vector<WeightedRow> rows);

    int vertex_count() const { return n_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    const std::vector<WeightedRow>& rows() const { return rows_; }
    void append(SignRow row, Rational weight);

    Rational trace() const;
    bool is_canonical() const;
    bool operator==(const Decomposition& o) const { return n_ == o.n_ && rows_ == o.rows_; }

  private:
    int n_;
    std::vector<WeightedRow> rows_;
};

struct VerifyReport {
    bool feasible = false;
    Rational worst_violation;
    std::optional<std::pair<int, int>> offending_pair;
};

/// Exact feasibility check of Sum_r w_r s_r[i] s_r[j] = A[i][j] over all
/// pairs i < j. The diagonal is not part of the condition.
VerifyReport verify(const Graph& g, const Decomposition& d);

/// P^T W P as an exact n x n matrix; every diagonal entry equals trace().
std::vector<std::vector<Rational>> gram(const Decomposition& d);

/// Canonicalize: flip rows with first sign -1 (weights unchanged), merge
/// equal rows, drop zero weights, sort by row-number key. Off-diagonal gram
/// entries are preserved exactly, so verify() is invariant.
Decomposition simplify(const Decomposition& d);

/// Keep only the columns in s, relabeled in increasing order.
Decomposition restrict_to(const Decomposition& d, const VertexSet& s);

/// Concatenate rows; d2's weights are negated when subtract is true.
Decomposition combine(const Decomposition& d1, const Decomposition& d2, bool subtract);

/// Line-oriented document: header "n k tr", then k rows "num/den mask_hex".
/// Bit i of the hex mask means sign -1 at (1-indexed) vertex i+1.
std::string format_decomposition(const Decomposition& d);
Decomposition parse_decomposition(const std::string& text);
/// Structured-object export (serialized JSON, same fields as the document).
std::string decomposition_to_json(const Decomposition& d);

}  // namespace gctk
