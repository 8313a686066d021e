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

#include "gctk/decomposition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gctk/errors.hpp"

namespace gctk {

SignRow biclique_row(const VertexSet& cut_set) { return cut_set; }

Decomposition Decomposition::from_rows(int n, std::vector<WeightedRow> rows) {
    Decomposition d(n);
    for (auto& r : rows) d.append(std::move(r.row), std::move(r.weight));
    return d;
}

void Decomposition::append(SignRow row, Rational weight) {
    if (row.width() != n_) throw DimensionMismatch("row length differs from decomposition n");
    rows_.push_back({std::move(row), std::move(weight)});
}

Rational Decomposition::trace() const {
    Rational t = 0;
    for (const auto& r : rows_) t += r.weight;
    return t;
}

bool Decomposition::is_canonical() const {
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].row.test(0)) return false;
        if (rows_[i].weight == 0) return false;
        if (i > 0) {
            const int cmp = Bitmask::compare_value(row_number_key(rows_[i - 1].row),
                                                   row_number_key(rows_[i].row));
            if (cmp >= 0) return false;
        }
    }
    return true;
}

VerifyReport verify(const Graph& g, const Decomposition& d) {
    if (g.vertex_count() != d.vertex_count())
        throw DimensionMismatch("graph and decomposition vertex counts differ");
    const int n = g.vertex_count();
    VerifyReport report;
    report.worst_violation = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Rational sum = 0;
            for (const auto& r : d.rows()) {
                if (r.row.test(i) == r.row.test(j))
                    sum += r.weight;
                else
                    sum -= r.weight;
            }
            Rational diff = sum - (g.edge(i, j) ? 1 : 0);
            if (diff < 0) diff = -diff;
            if (diff > report.worst_violation) {
                report.worst_violation = diff;
                report.offending_pair = {i, j};
            }
        }
    }
    report.feasible = report.worst_violation == 0;
    return report;
}

std::vector<std::vector<Rational>> gram(const Decomposition& d) {
    const int n = d.vertex_count();
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Rational sum = 0;
            for (const auto& r : d.rows()) {
                if (r.row.test(i) == r.row.test(j))
                    sum += r.weight;
                else
                    sum -= r.weight;
            }
            g[i][j] = sum;
            g[j][i] = std::move(sum);
        }
    }
    return g;
}

Decomposition simplify(const Decomposition& d) {
    std::map<std::vector<int>, std::pair<SignRow, Rational>> merged;
    for (const auto& r : d.rows()) {
        SignRow row = r.row.test(0) ? r.row.complement() : r.row;
        auto key = row.bits();
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(std::move(key), std::make_pair(std::move(row), r.weight));
        else
            it->second.second += r.weight;
    }
    std::vector<WeightedRow> rows;
    for (auto& [key, rw] : merged) {
        if (rw.second == 0) continue;
        rows.push_back({std::move(rw.first), std::move(rw.second)});
    }
    std::sort(rows.begin(), rows.end(), [](const WeightedRow& a, const WeightedRow& b) {
        return Bitmask::compare_value(row_number_key(a.row), row_number_key(b.row)) < 0;
    });
    return Decomposition::from_rows(d.vertex_count(), std::move(rows));
}

Decomposition restrict_to(const Decomposition& d, const VertexSet& s) {
    if (s.width() != d.vertex_count()) throw DimensionMismatch("vertex set width differs");
    if (s.none()) throw InvalidParameter("restriction to empty vertex set");
    const std::vector<int> keep = s.bits();
    Decomposition out(static_cast<int>(keep.size()));
    for (const auto& r : d.rows()) {
        SignRow row(static_cast<int>(keep.size()));
        for (size_t i = 0; i < keep.size(); ++i)
            if (r.row.test(keep[i])) row.set(static_cast<int>(i));
        out.append(std::move(row), r.weight);
    }
    return out;
}

Decomposition combine(const Decomposition& d1, const Decomposition& d2, bool subtract) {
    if (d1.vertex_count() != d2.vertex_count())
        throw DimensionMismatch("decomposition vertex counts differ");
    Decomposition out(d1.vertex_count());
    for (const auto& r : d1.rows()) out.append(r.row, r.weight);
    for (const auto& r : d2.rows()) out.append(r.row, subtract ? Rational(-r.weight) : r.weight);
    return out;
}

std::string format_decomposition(const Decomposition& d) {
    std::ostringstream out;
    out << d.vertex_count() << " " << d.row_count() << " " << rational_to_slash(d.trace()) << "\n";
    for (const auto& r : d.rows())
        out << rational_to_slash(r.weight) << " " << r.row.to_hex() << "\n";
    return out.str();
}

Decomposition parse_decomposition(const std::string& text) {
    std::istringstream in(text);
    long n, k;
    std::string tr_str;
    if (!(in >> n >> k >> tr_str)) throw ParseError("missing 'n k tr' header");
    if (n < 1 || k < 0) throw ParseError("bad decomposition header");
    const Rational declared_tr = rational_from_string(tr_str);
    Decomposition d(static_cast<int>(n));
    for (long i = 0; i < k; ++i) {
        std::string w_str, mask_str;
        if (!(in >> w_str >> mask_str)) throw ParseError("fewer rows than declared");
        d.append(Bitmask::from_hex(static_cast<int>(n), mask_str), rational_from_string(w_str));
    }
    std::string extra;
    if (in >> extra) throw ParseError("trailing content '" + extra + "'");
    if (d.trace() != declared_tr) throw ParseError("declared trace does not match rows");
    return d;
}

std::string decomposition_to_json(const Decomposition& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : d.rows())
        rows.push_back({{"weight", rational_to_slash(r.weight)}, {"mask", r.row.to_hex()}});
    nlohmann::json doc = {{"n", d.vertex_count()},
                          {"k", d.row_count()},
                          {"tr", rational_to_slash(d.trace())},
                          {"rows", rows}};
    return doc.dump(2) + "\n";
}

}  // namespace gctk
