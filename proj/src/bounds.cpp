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

#include "gctk/bounds.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gctk/errors.hpp"

namespace gctk {

namespace {

// Integer polynomials, ascending coefficients, used only for the
// multiplicity tower. Leading coefficient nonzero unless the poly is zero.
using Poly = std::vector<Integer>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Integer content(const Poly& p) {
    Integer c = 0;
    for (const auto& a : p) {
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
        if (c == 1) break;
    }
    return c;
}

Poly primitive_part(Poly p) {
    trim(p);
    if (p.empty()) return p;
    Integer c = content(p);
    if (p.back() < 0) c = -c;
    for (auto& a : p) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    return p;
}

// Pseudo-remainder of a by b (deg a >= deg b >= 0).
Poly pseudo_rem(Poly a, const Poly& b) {
    const Integer lb = b.back();
    int gap = degree(a) - degree(b);
    while (degree(a) >= degree(b) && !a.empty()) {
        const Integer la = a.back();
        for (auto& coeff : a) coeff *= lb;
        const int shift = degree(a) - degree(b);
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
        trim(a);
        if (--gap < 0) break;
    }
    return a;
}

// Primitive polynomial gcd; adequate at char-poly sizes (degree <= ~100).
Poly poly_gcd(Poly a, Poly b) {
    a = primitive_part(std::move(a));
    b = primitive_part(std::move(b));
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        Poly r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::string poly_to_string(const Poly& p) {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        const Integer& c = p[i];
        if (c == 0) continue;
        if (!first) out << (c > 0 ? " + " : " - ");
        if (first && c < 0) out << "-";
        first = false;
        Integer a = abs(c);
        if (a != 1 || i == 0) out << a.get_str();
        if (i > 0) {
            if (a != 1) out << "*";
            out << "x";
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    return out.str();
}

std::vector<double> numeric_eigenvalues(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("symmetric eigensolver did not converge");
    std::vector<double> evs(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(evs.begin(), evs.end());
    return evs;
}

// Largest cluster under the absolute tolerance; returns (size, mean).
std::pair<int, double> largest_cluster(const std::vector<double>& sorted, double tol) {
    int best = 1;
    double best_mean = sorted.empty() ? 0.0 : sorted[0];
    size_t start = 0;
    for (size_t i = 0; i <= sorted.size(); ++i) {
        if (i == sorted.size() || (i > start && sorted[i] - sorted[i - 1] > tol)) {
            const int size = static_cast<int>(i - start);
            if (size > best) {
                double sum = 0;
                for (size_t j = start; j < i; ++j) sum += sorted[j];
                best = size;
                best_mean = sum / size;
            }
            start = i;
        }
    }
    return {best, best_mean};
}

}  // namespace

std::vector<Integer> char_poly(const Graph& g) {
    // Faddeev-LeVerrier: all intermediate values stay integer; the division
    // by k at each step is exact.
    const int n = g.vertex_count();
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n, 0));
    for (auto [u, v] : g.edges()) {
        a[u][v] = 1;
        a[v][u] = 1;
    }
    std::vector<Integer> coeffs(n + 1, Integer(0));
    coeffs[n] = 1;
    std::vector<std::vector<Integer>> m = a;
    Integer trace = 0;
    for (int i = 0; i < n; ++i) trace += m[i][i];
    coeffs[n - 1] = -trace;
    for (int k = 2; k <= n; ++k) {
        // m <- a * (m + c_{n-k+1} I)
        std::vector<std::vector<Integer>> shifted = m;
        for (int i = 0; i < n; ++i) shifted[i][i] += coeffs[n - k + 1];
        std::vector<std::vector<Integer>> next(n, std::vector<Integer>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (a[i][l] == 0) continue;  // adjacency entries are 0/1
                for (int j = 0; j < n; ++j) next[i][j] += shifted[l][j];
            }
        m = std::move(next);
        Integer tr = 0;
        for (int i = 0; i < n; ++i) tr += m[i][i];
        Integer c = -tr;
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
        coeffs[n - k] = c;
    }
    return coeffs;
}

BoundReport spectral_lower_bound(const Graph& g, BoundMethod mode) {
    const int n = g.vertex_count();
    BoundReport report;
    report.method = mode;
    if (mode == BoundMethod::numeric) {
        const auto evs = numeric_eigenvalues(g);
        const double radius = std::max(std::fabs(evs.front()), std::fabs(evs.back()));
        const double tol = 1e-8 * std::max(1.0, radius);
        auto [mult, mean] = largest_cluster(evs, tol);
        report.max_multiplicity = mult;
        report.witness_eigenvalue = mean;
    } else {
        Poly p = char_poly(g);
        Poly d = p;
        int mult = 0;
        while (true) {
            ++mult;
            Poly der = derivative(d);
            if (der.empty()) break;  // deg d == 0 cannot happen before this
            Poly gcd = poly_gcd(d, der);
            if (degree(gcd) == 0) break;
            d = std::move(gcd);
        }
        report.max_multiplicity = mult;
        report.witness_exact = poly_to_string(primitive_part(d));
        // The witness value itself is display-only; the numeric spectrum
        // locates the cluster of the exact multiplicity.
        try {
            const auto evs = numeric_eigenvalues(g);
            const double radius = std::max(std::fabs(evs.front()), std::fabs(evs.back()));
            auto [mult_num, mean] = largest_cluster(evs, 1e-8 * std::max(1.0, radius));
            report.witness_eigenvalue = mult_num == mult ? mean : evs.back();
        } catch (const NumericalFailure&) {
            report.witness_eigenvalue = std::nan("");
        }
    }
    report.lower_bound = n - report.max_multiplicity;
    return report;
}

BoundReport spectral_lower_bound(const Graph& g) {
    if (g.vertex_count() <= 32) return spectral_lower_bound(g, BoundMethod::exact);
    try {
        return spectral_lower_bound(g, BoundMethod::numeric);
    } catch (const NumericalFailure&) {
        return spectral_lower_bound(g, BoundMethod::exact);
    }
}

std::string format_bound_report(const BoundReport& r) {
    std::ostringstream out;
    out << "lb=" << r.lower_bound << " mult=" << r.max_multiplicity << " lambda≈";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", r.witness_eigenvalue);
    out << buf << " method=" << (r.method == BoundMethod::exact ? "exact" : "numeric");
    return out.str();
}

}  // namespace gctk
