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
#include <vector>

#include "gctk/graph.hpp"

namespace gctk {

struct BenchInstance {
    std::string id;  // "<n>-<k>"
    int n = 0;
    double p = 0.0;
    uint64_t seed = 0;
    Graph g{1};
};

/// Seeded random suite shaped like the published comparison: n = 4..20, two
/// graphs per size, each with its edge probability drawn uniformly from a
/// master splitmix64 stream. Fully reproducible from the master seed.
std::vector<BenchInstance> default_suite();
uint64_t default_suite_master_seed();

/// One line per instance: "id n p seed m".
std::string format_manifest(const std::vector<BenchInstance>& suite);
/// Regenerates each graph from (n, p, seed) and cross-checks m.
std::vector<BenchInstance> parse_manifest(const std::string& text);

struct BenchRecord {
    std::string graph_id;
    int n = 0;
    int m = 0;
    int lower_bound = 0;
    int rows_stars = 0;
    int rows_double = 0;
    int rows_best = 0;
    std::optional<int> oracle_gc;
    double t_stars_ms = 0.0;
    double t_double_ms = 0.0;
    double t_oracle_ms = 0.0;
};

struct BenchOptions {
    int jobs = 0;             // 0 = logical cores
    bool with_times = true;   // false zeroes timing columns (byte-stable CSV)
    double oracle_limit_s = 300.0;
    int oracle_max_n = 6;
};

/// Runs stars, double-stars, auto and (small n) the exact oracle per
/// instance, asserting the bound ladder; edgeless instances are skipped.
/// Any invariant failure aborts with a diagnostic naming the instance.
std::vector<BenchRecord> bench_suite(const std::vector<BenchInstance>& suite,
                                     const BenchOptions& opts = {});

std::string format_csv(const std::vector<BenchRecord>& records);

}  // namespace gctk
