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

#include "gctk/oracle.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "gctk/bounds.hpp"
#include "gctk/errors.hpp"

namespace gctk {

namespace {

using Clock = std::chrono::steady_clock;

// Fraction-free elimination over mpz with column pivoting. Returns the
// matrix in echelon form plus the pivot (row, col) list; divisions by the
// previous pivot are exact (entries are minors of the input).
struct Echelon {
    std::vector<std::vector<Integer>> m;  // rows x (cols + 1), augmented
    std::vector<std::pair<int, int>> pivots;
};

Echelon bareiss(std::vector<std::vector<Integer>> m, int cols) {
    const int rows = static_cast<int>(m.size());
    Echelon e;
    Integer prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j <= cols; ++j) {
                Integer v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        e.pivots.emplace_back(r, c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

// Same elimination over int64 for the enumeration hot path; sound while the
// Hadamard bound on (k+1)-minors stays below 2^63 (k + 1 <= 25).
bool consistent_int64(int rows, int cols, int64_t* m /* rows x (cols+1) */) {
    const int stride = cols + 1;
    int64_t prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i * stride + c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = c; j <= cols; ++j) std::swap(m[r * stride + j], m[pr * stride + j]);
        const int64_t pivot = m[r * stride + c];
        for (int i = r + 1; i < rows; ++i) {
            const int64_t head = m[i * stride + c];
            if (head == 0 && pivot == prev) continue;
            for (int j = c + 1; j <= cols; ++j)
                m[i * stride + j] = (pivot * m[i * stride + j] - head * m[r * stride + j]) / prev;
            m[i * stride + c] = 0;
        }
        prev = pivot;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (m[i * stride + cols] != 0) return false;
    return true;
}

// Candidate sign rows for n vertices with first sign +1, indexed by
// j in [0, 2^(n-1)); ascending j is ascending row number rn = 2j + 1.
SignRow candidate_row(int n, uint32_t j) {
    SignRow row(n);
    for (int v = 1; v < n; ++v)
        if (((j >> (v - 1)) & 1u) == 0) row.set(v);
    return row;
}

struct EnumProblem {
    int n = 0;
    int pairs = 0;
    uint32_t row_count = 0;           // 2^(n-1)
    std::vector<int8_t> prod;         // row_count x pairs, +/-1
    std::vector<int8_t> rhs;          // pairs, 0/1
};

EnumProblem make_problem(const Graph& g) {
    EnumProblem pb;
    pb.n = g.vertex_count();
    pb.pairs = pb.n * (pb.n - 1) / 2;
    pb.row_count = 1u << (pb.n - 1);
    pb.prod.resize(static_cast<size_t>(pb.row_count) * pb.pairs);
    pb.rhs.resize(pb.pairs);
    int pair = 0;
    for (int u = 0; u < pb.n; ++u)
        for (int v = u + 1; v < pb.n; ++v) pb.rhs[pair++] = g.edge(u, v) ? 1 : 0;
    for (uint32_t j = 0; j < pb.row_count; ++j) {
        const SignRow row = candidate_row(pb.n, j);
        int q = 0;
        for (int u = 0; u < pb.n; ++u)
            for (int v = u + 1; v < pb.n; ++v)
                pb.prod[static_cast<size_t>(j) * pb.pairs + q++] =
                    row.test(u) == row.test(v) ? int8_t{1} : int8_t{-1};
    }
    return pb;
}

// Visit k-combinations of [first+1, row_count) extended with leading `first`,
// in lexicographic order, until fn returns false.
template <typename Fn>
void for_each_combination(uint32_t first, uint32_t row_count, int k, Fn&& fn) {
    std::vector<uint32_t> combo(static_cast<size_t>(k));
    combo[0] = first;
    for (int i = 1; i < k; ++i) combo[i] = first + i;
    if (combo.back() >= row_count) return;
    while (true) {
        if (!fn(combo)) return;
        int i = k - 1;
        while (i >= 1 && combo[i] == row_count - static_cast<uint32_t>(k - i)) --i;
        if (i < 1) return;
        ++combo[i];
        for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
}

struct LevelHit {
    uint32_t first = UINT32_MAX;
    std::vector<uint32_t> combo;
};

// Search one k level; returns the lexicographically smallest feasible row
// set, if any. Deterministic regardless of thread count.
std::optional<std::vector<uint32_t>> search_level(const EnumProblem& pb, int k, int threads,
                                                  const std::optional<Clock::time_point>& deadline,
                                                  bool* timed_out) {
    if (static_cast<uint32_t>(k) > pb.row_count) return std::nullopt;
    // Minors of the augmented k+1-column system stay below 2^63 for k <= 24.
    if (k > 24) throw ResourceLimit("level enumeration sound only for k <= 24");
    std::atomic<uint32_t> next_first{0};
    std::atomic<uint32_t> best_first{UINT32_MAX};
    std::atomic<bool> abort{false};
    std::mutex hit_mu;
    std::vector<LevelHit> hits;

    auto worker = [&]() {
        std::vector<int64_t> scratch(static_cast<size_t>(pb.pairs) * (k + 1));
        long counter = 0;
        while (true) {
            const uint32_t first = next_first.fetch_add(1);
            if (first >= pb.row_count || first > best_first.load()) return;
            if (deadline && Clock::now() > *deadline) {
                *timed_out = true;
                abort.store(true);
                return;
            }
            bool found_here = false;
            for_each_combination(first, pb.row_count, k, [&](const std::vector<uint32_t>& combo) {
                if (abort.load(std::memory_order_relaxed)) return false;
                if ((++counter & 1023) == 0 && deadline &&
                    Clock::now() > *deadline) {
                    *timed_out = true;
                    abort.store(true);
                    return false;
                }
                for (int p = 0; p < pb.pairs; ++p) {
                    int64_t* row = scratch.data() + static_cast<size_t>(p) * (k + 1);
                    for (int c = 0; c < k; ++c)
                        row[c] = pb.prod[static_cast<size_t>(combo[c]) * pb.pairs + p];
                    row[k] = pb.rhs[p];
                }
                if (consistent_int64(pb.pairs, k, scratch.data())) {
                    std::lock_guard<std::mutex> lk(hit_mu);
                    hits.push_back({first, combo});
                    uint32_t cur = best_first.load();
                    while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
                    }
                    found_here = true;
                    return false;
                }
                return true;
            });
            if (found_here && first == 0) return;
        }
    };

    int thread_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (thread_count < 1) thread_count = 1;
    // Levels with few combinations are not worth spawning workers for.
    double combos = 1.0;
    for (int i = 0; i < k && combos < 65536.0; ++i)
        combos *= static_cast<double>(pb.row_count - i) / (i + 1);
    if (combos < 65536.0) thread_count = 1;
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (*timed_out) return std::nullopt;
    const LevelHit* best = nullptr;
    for (const auto& h : hits)
        if (best == nullptr || h.first < best->first) best = &h;
    if (best == nullptr) return std::nullopt;
    return best->combo;
}

void check_caps(const Graph& g, const BruteForceOptions& opts) {
    if (!opts.override_cap && g.vertex_count() > opts.n_cap)
        throw ResourceLimit("brute force capped at n <= " + std::to_string(opts.n_cap) +
                            " (override to proceed)");
    if (g.vertex_count() > 20)
        throw ResourceLimit("brute force enumeration requires n <= 20");
}

int default_k_max(int n) { return (5 * n + 4 + 1) / 2; }  // ceil(2.5 n + 2)

std::optional<Clock::time_point> make_deadline(const BruteForceOptions& opts) {
    if (!opts.time_limit_s) return std::nullopt;
    return Clock::now() + std::chrono::microseconds(static_cast<long>(*opts.time_limit_s * 1e6));
}

}  // namespace

LinearSystem pair_system(const Graph& g, const std::vector<SignRow>& sign_rows) {
    const int n = g.vertex_count();
    LinearSystem sys;
    sys.cols = static_cast<int>(sign_rows.size());
    sys.rows = n * (n - 1) / 2;
    sys.b.assign(sys.rows, std::vector<Rational>(sys.cols, Rational(0)));
    sys.c.assign(sys.rows, Rational(0));
    int r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            for (int c = 0; c < sys.cols; ++c) {
                if (sign_rows[c].width() != n)
                    throw DimensionMismatch("sign row width differs from graph");
                sys.b[r][c] = sign_rows[c].test(i) == sign_rows[c].test(j) ? 1 : -1;
            }
            sys.c[r] = g.edge(i, j) ? 1 : 0;
            ++r;
        }
    return sys;
}

std::optional<std::vector<Rational>> solve_rational_system(const LinearSystem& sys) {
    // Clear denominators row by row, then eliminate fraction-free.
    std::vector<std::vector<Integer>> m(sys.rows, std::vector<Integer>(sys.cols + 1));
    for (int i = 0; i < sys.rows; ++i) {
        Integer lcm = 1;
        for (int j = 0; j < sys.cols; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), sys.b[i][j].get_den().get_mpz_t());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), sys.c[i].get_den().get_mpz_t());
        for (int j = 0; j < sys.cols; ++j)
            m[i][j] = sys.b[i][j].get_num() * (lcm / sys.b[i][j].get_den());
        m[i][sys.cols] = sys.c[i].get_num() * (lcm / sys.c[i].get_den());
    }
    Echelon e = bareiss(std::move(m), sys.cols);
    const int rank = static_cast<int>(e.pivots.size());
    for (int i = rank; i < sys.rows; ++i)
        if (e.m[i][sys.cols] != 0) return std::nullopt;
    std::vector<Rational> w(sys.cols, Rational(0));
    for (int p = rank - 1; p >= 0; --p) {
        const auto [row, col] = e.pivots[p];
        Rational acc(e.m[row][sys.cols]);
        for (int j = col + 1; j < sys.cols; ++j)
            if (e.m[row][j] != 0) acc -= Rational(e.m[row][j]) * w[j];
        w[col] = acc / Rational(e.m[row][col]);
    }
    return w;
}

std::optional<BruteForceResult> brute_force_gc(const Graph& g, const BruteForceOptions& opts) {
    const int n = g.vertex_count();
    if (g.edge_count() == 0) return BruteForceResult{0, Decomposition(n)};
    check_caps(g, opts);

    int k_start = 1;
    if (opts.k_start)
        k_start = std::max(1, *opts.k_start);
    else if (!opts.paper_faithful)
        k_start = std::max(1, spectral_lower_bound(g, BoundMethod::exact).lower_bound);
    const int k_max = opts.k_max ? *opts.k_max : default_k_max(n);

    const EnumProblem pb = make_problem(g);
    const auto deadline = make_deadline(opts);
    for (int k = k_start; k <= k_max; ++k) {
        if (static_cast<uint32_t>(k) > pb.row_count) break;
        bool timed_out = false;
        auto combo = search_level(pb, k, opts.threads, deadline, &timed_out);
        if (timed_out) return std::nullopt;
        if (!combo) continue;
        std::vector<SignRow> rows;
        rows.reserve(combo->size());
        for (uint32_t j : *combo) rows.push_back(candidate_row(n, j));
        auto w = solve_rational_system(pair_system(g, rows));
        if (!w) throw Error("internal: int64 and exact elimination disagree");
        Decomposition d(n);
        for (size_t i = 0; i < rows.size(); ++i) d.append(rows[i], (*w)[i]);
        d = simplify(d);
        // At the first feasible level no weight can be zero and no rows merge,
        // else a smaller level would have been feasible.
        if (d.row_count() != k) throw Error("internal: minimal-level certificate lost rows");
        if (!verify(g, d).feasible) throw Error("internal: brute-force certificate failed verify");
        return BruteForceResult{k, std::move(d)};
    }
    throw ResourceLimit("no solution within k_max = " + std::to_string(k_max));
}

bool certify_infeasible_k(const Graph& g, int k, const BruteForceOptions& opts) {
    if (k < 1) throw InvalidParameter("k must be positive");
    // Edgeless targets are consistent at any level (w = 0 solves B w = 0).
    if (g.edge_count() == 0) return false;
    check_caps(g, opts);
    const EnumProblem pb = make_problem(g);
    if (static_cast<uint32_t>(k) > pb.row_count)
        throw ResourceLimit("k exceeds the number of distinct candidate rows");
    bool timed_out = false;
    const auto deadline = make_deadline(opts);
    auto combo = search_level(pb, k, opts.threads, deadline, &timed_out);
    if (timed_out) throw ResourceLimit("time limit hit before enumeration completed");
    return !combo.has_value();
}

}  // namespace gctk
