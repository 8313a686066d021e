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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gctk/bench.hpp"
#include "gctk/bounds.hpp"
#include "gctk/circuits.hpp"
#include "gctk/constructions.hpp"
#include "gctk/decomposition.hpp"
#include "gctk/errors.hpp"
#include "gctk/graph.hpp"
#include "gctk/milp.hpp"
#include "gctk/oracle.hpp"

namespace {

using namespace gctk;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Relative output paths land under $GCTK_OUTDIR when it is set; this is the
// only environment knob.
std::string resolve_out(const std::string& path) {
    const char* outdir = std::getenv("GCTK_OUTDIR");
    if (outdir == nullptr || *outdir == '\0' || path.empty() || path.front() == '/') return path;
    std::string base(outdir);
    if (base.back() != '/') base += '/';
    return base + path;
}

void spill(const std::string& path, const std::string& content) {
    const std::string full = resolve_out(path);
    std::ofstream out(full, std::ios::binary);
    if (!out) throw MalformedInput("cannot write '" + full + "'");
    out << content;
}

Graph load_graph(const std::string& path, const std::string& format) {
    const std::string text = slurp(path);
    if (format == "matrix") return parse_adjacency_matrix(text);
    return parse_graph(text);
}

struct GenArgs {
    std::string family, out, format = "edges";
    int n = 0, q = 0, a = 0, b = 0;
    std::vector<int> sizes;
    double p = 0.5;
    uint64_t seed = 1;
};

Graph build_family(const GenArgs& args) {
    if (args.family == "complete") return generate_complete(args.q > 0 ? args.q : args.n, args.n);
    if (args.family == "pm") return generate_perfect_matching(args.q);
    if (args.family == "path") return generate_path(args.n);
    if (args.family == "cycle") return generate_cycle(args.n);
    if (args.family == "biclique") return generate_biclique(args.a, args.b);
    if (args.family == "cliques") return generate_disjoint_cliques(args.sizes);
    if (args.family == "er") return generate_erdos_renyi(args.n, args.p, args.seed);
    throw InvalidParameter("unknown family '" + args.family + "'");
}

void write_graph(const Graph& g, const std::string& out, const std::string& format) {
    const std::string text = format == "matrix" ? format_adjacency_matrix(g) : format_edge_list(g);
    if (out.empty())
        std::cout << text;
    else
        spill(out, text);
}

MipFlags flags_from(bool no_padberg, bool no_drop, bool no_lb, bool ones_row) {
    MipFlags flags;
    flags.padberg = !no_padberg;
    flags.drop_tautologies = !no_drop;
    flags.lb_cut = !no_lb;
    flags.ones_row = ones_row;
    return flags;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph coupling toolkit: compile Max-Cut cost Hamiltonians into global "
                 "coupling layers and bit flips"};
    app.require_subcommand(1);
    // Optional key=value configuration; command-line flags take precedence.
    app.set_config("--config", "", "read options from a key=value file");

    // gen
    GenArgs gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a graph");
    cmd_gen->add_option("--family", gen.family,
                        "complete|pm|path|cycle|biclique|cliques|er")->required();
    cmd_gen->add_option("--n", gen.n, "vertex count");
    cmd_gen->add_option("--q", gen.q, "clique size / matching edges");
    cmd_gen->add_option("--a", gen.a, "biclique part A size");
    cmd_gen->add_option("--b", gen.b, "biclique part B size");
    cmd_gen->add_option("--sizes", gen.sizes, "disjoint clique sizes");
    cmd_gen->add_option("--p", gen.p, "edge probability");
    cmd_gen->add_option("--seed", gen.seed, "PRNG seed");
    cmd_gen->add_option("--out", gen.out, "output file (stdout if omitted)");
    cmd_gen->add_option("--format", gen.format, "edges|matrix");

    // compile
    std::string in_path, in_format = "edges", method = "auto", out_dec, out_json, out_circuit;
    auto* cmd_compile = app.add_subcommand("compile", "compile a graph into coupling layers");
    cmd_compile->add_option("--in", in_path, "input graph")->required();
    cmd_compile->add_option("--format", in_format, "edges|matrix");
    cmd_compile->add_option("--method", method,
                            "auto|detector|clique|pm-hadamard|cycle|path|stars|double-stars|"
                            "complement");
    cmd_compile->add_option("--out", out_dec, "decomposition document output");
    cmd_compile->add_option("--json-out", out_json, "structured decomposition output");
    cmd_compile->add_option("--circuit-out", out_circuit, "pulse program output");

    // verify
    std::string v_graph, v_dec, v_format = "edges";
    auto* cmd_verify = app.add_subcommand("verify", "verify a decomposition against a graph");
    cmd_verify->add_option("--graph", v_graph)->required();
    cmd_verify->add_option("--format", v_format, "edges|matrix");
    cmd_verify->add_option("--dec", v_dec)->required();

    // bound
    std::string b_in, b_format = "edges", b_mode = "auto";
    auto* cmd_bound = app.add_subcommand("bound", "spectral lower bound");
    cmd_bound->add_option("--in", b_in)->required();
    cmd_bound->add_option("--format", b_format, "edges|matrix");
    cmd_bound->add_option("--mode", b_mode, "auto|numeric|exact");

    // brute
    std::string br_in, br_format = "edges", br_out;
    int br_kstart = 0, br_kmax = 0, br_threads = 0;
    double br_limit = 0.0;
    bool br_paper = false, br_force = false;
    auto* cmd_brute = app.add_subcommand("brute", "exact gc by exhaustive search");
    cmd_brute->add_option("--in", br_in)->required();
    cmd_brute->add_option("--format", br_format, "edges|matrix");
    cmd_brute->add_option("--k-start", br_kstart, "first level to try");
    cmd_brute->add_option("--k-max", br_kmax, "last level to try");
    cmd_brute->add_option("--time-limit", br_limit, "seconds");
    cmd_brute->add_option("--jobs", br_threads, "worker threads");
    cmd_brute->add_flag("--paper-faithful", br_paper, "start at k=1 instead of the bound");
    cmd_brute->add_flag("--force", br_force, "lift the n<=8 cap");
    cmd_brute->add_option("--out", br_out, "write the certificate decomposition");

    // mip-export
    std::string me_in, me_format = "edges", me_out = "model", me_warm = "stars", me_m = "10";
    int me_r = 0;
    bool me_no_padberg = false, me_no_drop = false, me_no_lb = false, me_ones = false,
         me_sound_m = false;
    auto* cmd_mexport = app.add_subcommand("mip-export", "write the compact MIP and warm start");
    cmd_mexport->add_option("--in", me_in)->required();
    cmd_mexport->add_option("--format", me_format, "edges|matrix");
    cmd_mexport->add_option("--out", me_out, "output prefix (.lp/.warm/.rationals)");
    cmd_mexport->add_option("--r", me_r, "row budget (default: warm-start rows)");
    cmd_mexport->add_option("--big-m", me_m, "big-M value");
    cmd_mexport->add_option("--warmstart", me_warm, "stars|double-stars|none");
    cmd_mexport->add_flag("--sound-big-m", me_sound_m, "use the proven weight bound");
    long me_padberg_budget = 0;
    cmd_mexport->add_flag("--no-padberg", me_no_padberg);
    cmd_mexport->add_flag("--no-drop-tautologies", me_no_drop);
    cmd_mexport->add_flag("--no-lb-cut", me_no_lb);
    cmd_mexport->add_flag("--ones-row", me_ones, "force an all-ones row (strengthening)");
    cmd_mexport->add_option("--padberg-budget", me_padberg_budget,
                            "cap Padberg triples per row slot (0 = all)");

    // mip-check
    std::string mc_model, mc_assign, mc_rationals;
    bool mc_sparse = false;
    auto* cmd_mcheck = app.add_subcommand("mip-check", "evaluate an assignment against a model");
    cmd_mcheck->add_option("--model", mc_model, "model .lp file")->required();
    cmd_mcheck->add_option("--assignment", mc_assign, "name value lines")->required();
    cmd_mcheck->add_option("--rationals", mc_rationals, "exact-value sidecar");
    cmd_mcheck->add_flag("--sparse", mc_sparse, "treat missing variables as zero");

    // mip-import
    std::string mi_in, mi_format = "edges", mi_model, mi_sol, mi_out, mi_json;
    auto* cmd_mimport = app.add_subcommand("mip-import", "ingest a solver solution");
    cmd_mimport->add_option("--in", mi_in, "graph the model was built from")->required();
    cmd_mimport->add_option("--format", mi_format, "edges|matrix");
    cmd_mimport->add_option("--model", mi_model, "model .lp file")->required();
    cmd_mimport->add_option("--solution", mi_sol, "solver solution listing")->required();
    cmd_mimport->add_option("--out", mi_out, "decomposition output");
    cmd_mimport->add_option("--json-out", mi_json);

    // emit-circuit
    std::string ec_graph, ec_format = "edges", ec_dec, ec_out, ec_json;
    bool ec_reorder = false;
    auto* cmd_emit = app.add_subcommand("emit-circuit", "emit the pulse program for a verified "
                                                        "decomposition");
    cmd_emit->add_option("--graph", ec_graph)->required();
    cmd_emit->add_option("--format", ec_format, "edges|matrix");
    cmd_emit->add_option("--dec", ec_dec)->required();
    cmd_emit->add_option("--out", ec_out, "circuit text output (stdout if omitted)");
    cmd_emit->add_option("--json-out", ec_json);
    cmd_emit->add_flag("--reorder-flips", ec_reorder, "greedy flip-count reordering");

    // bench
    std::string be_manifest, be_out, be_manifest_out, be_suite = "default";
    int be_jobs = 0;
    bool be_no_times = false;
    double be_oracle_limit = 300.0;
    int be_oracle_max_n = 6;
    auto* cmd_bench = app.add_subcommand("bench", "run the benchmark suite");
    cmd_bench->add_option("--suite", be_suite, "named suite (only 'default')");
    cmd_bench->add_option("--manifest", be_manifest, "instance manifest (overrides --suite)");
    cmd_bench->add_option("--out", be_out, "CSV output (stdout if omitted)");
    cmd_bench->add_option("--manifest-out", be_manifest_out, "write the suite manifest");
    cmd_bench->add_option("--jobs", be_jobs, "worker threads");
    cmd_bench->add_option("--oracle-limit", be_oracle_limit, "oracle seconds per instance");
    cmd_bench->add_option("--oracle-max-n", be_oracle_max_n, "largest n handed to the oracle");
    cmd_bench->add_flag("--no-times", be_no_times, "zero the timing columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_gen->parsed()) {
            write_graph(build_family(gen), gen.out, gen.format);
        } else if (cmd_compile->parsed()) {
            const Graph g = load_graph(in_path, in_format);
            const CompileResult result = compile_with_method(g, method);
            std::cout << "method=" << result.method << " rows=" << result.rows
                      << " lb=" << result.lower_bound << " verified=yes"
                      << " optimal=" << (result.optimal() ? "yes" : "no") << "\n";
            if (!out_dec.empty()) spill(out_dec, format_decomposition(result.dec));
            if (!out_json.empty()) spill(out_json, decomposition_to_json(result.dec));
            if (!out_circuit.empty())
                spill(out_circuit, format_circuit(emit_pulse_program(result.dec, g)));
        } else if (cmd_verify->parsed()) {
            const Graph g = load_graph(v_graph, v_format);
            const Decomposition d = parse_decomposition(slurp(v_dec));
            const VerifyReport report = verify(g, d);
            if (report.feasible) {
                std::cout << "feasible violation=0\n";
            } else {
                std::cout << "infeasible violation="
                          << rational_to_compact(report.worst_violation) << " pair=("
                          << report.offending_pair->first + 1 << ","
                          << report.offending_pair->second + 1 << ")\n";
                return 1;
            }
        } else if (cmd_bound->parsed()) {
            const Graph g = load_graph(b_in, b_format);
            BoundReport report;
            if (b_mode == "numeric")
                report = spectral_lower_bound(g, BoundMethod::numeric);
            else if (b_mode == "exact")
                report = spectral_lower_bound(g, BoundMethod::exact);
            else
                report = spectral_lower_bound(g);
            std::cout << format_bound_report(report) << "\n";
        } else if (cmd_brute->parsed()) {
            const Graph g = load_graph(br_in, br_format);
            BruteForceOptions opts;
            if (br_kstart > 0) opts.k_start = br_kstart;
            if (br_kmax > 0) opts.k_max = br_kmax;
            if (br_limit > 0) opts.time_limit_s = br_limit;
            opts.paper_faithful = br_paper;
            opts.override_cap = br_force;
            opts.threads = br_threads;
            const auto result = brute_force_gc(g, opts);
            if (!result) {
                std::cout << "timeout\n";
                return 1;
            }
            std::cout << "gc=" << result->gc << "\n";
            if (!br_out.empty()) spill(br_out, format_decomposition(result->dec));
        } else if (cmd_mexport->parsed()) {
            const Graph g = load_graph(me_in, me_format);
            MipFlags flags = flags_from(me_no_padberg, me_no_drop, me_no_lb, me_ones);
            flags.padberg_budget = me_padberg_budget;
            std::optional<Decomposition> warm;
            if (me_warm == "stars")
                warm = union_of_stars(g);
            else if (me_warm == "double-stars")
                warm = union_of_double_stars(g);
            else if (me_warm != "none")
                throw InvalidParameter("unknown warm start '" + me_warm + "'");
            int rows = me_r;
            if (rows <= 0) {
                if (!warm) throw InvalidParameter("--r is required with --warmstart none");
                rows = warm->row_count();
            } else if (warm && rows != warm->row_count()) {
                warm.reset();  // bound-probing run; the warm start no longer fits
                std::cerr << "note: --r overrides the warm-start row count; warm start omitted\n";
            }
            const Rational big_m = me_sound_m ? sound_big_m(g.vertex_count())
                                              : rational_from_string(me_m);
            const MipModel model = build_cmipgc(g, rows, big_m, flags);
            const ModelText text = emit_model(model);
            spill(me_out + ".lp", text.lp);
            std::string sidecar = text.sidecar;
            if (warm) {
                const WarmStartText ws = emit_warmstart(*warm, model);
                spill(me_out + ".warm", ws.text);
                sidecar += ws.sidecar;
            }
            if (!sidecar.empty()) spill(me_out + ".rationals", sidecar);
            std::cout << "model=" << me_out << ".lp vars=" << model.vars.size()
                      << " cons=" << model.cons.size()
                      << (warm ? " warmstart=" + me_out + ".warm" : "") << "\n";
        } else if (cmd_mcheck->parsed()) {
            const MipModel model = parse_model(slurp(mc_model));
            const std::string side = mc_rationals.empty() ? "" : slurp(mc_rationals);
            const auto map = parse_assignment(slurp(mc_assign), side);
            std::vector<std::string> unknown;
            const auto values = assignment_from_map(model, map, mc_sparse, &unknown);
            for (const auto& name : unknown)
                std::cerr << "warning: unknown variable '" << name << "'\n";
            const EvalReport report = evaluate(model, values);
            std::cout << (report.feasible ? "feasible" : "infeasible")
                      << " max_violation=" << rational_to_compact(report.max_violation)
                      << " objective=" << rational_to_compact(report.objective) << "\n";
            for (const auto& name : report.violated) std::cout << "violated " << name << "\n";
            if (!report.feasible) return 1;
        } else if (cmd_mimport->parsed()) {
            const Graph g = load_graph(mi_in, mi_format);
            const MipModel model = parse_model(slurp(mi_model));
            const CompileResult result = ingest_solution(slurp(mi_sol), g, model);
            std::cout << "method=" << result.method << " rows=" << result.rows
                      << " lb=" << result.lower_bound << "\n";
            if (!mi_out.empty()) spill(mi_out, format_decomposition(result.dec));
            if (!mi_json.empty()) spill(mi_json, decomposition_to_json(result.dec));
        } else if (cmd_emit->parsed()) {
            const Graph g = load_graph(ec_graph, ec_format);
            const Decomposition d = parse_decomposition(slurp(ec_dec));
            const PulseProgram program = emit_pulse_program(d, g, ec_reorder);
            if (!ec_out.empty())
                spill(ec_out, format_circuit(program));
            else
                std::cout << format_circuit(program);
            if (!ec_json.empty()) spill(ec_json, circuit_to_json(program));
        } else if (cmd_bench->parsed()) {
            if (be_suite != "default") throw InvalidParameter("unknown suite '" + be_suite + "'");
            const auto suite =
                be_manifest.empty() ? default_suite() : parse_manifest(slurp(be_manifest));
            if (!be_manifest_out.empty()) spill(be_manifest_out, format_manifest(suite));
            BenchOptions opts;
            opts.jobs = be_jobs;
            opts.with_times = !be_no_times;
            opts.oracle_limit_s = be_oracle_limit;
            opts.oracle_max_n = be_oracle_max_n;
            const auto records = bench_suite(suite, opts);
            const std::string csv = format_csv(records);
            if (!be_out.empty())
                spill(be_out, csv);
            else
                std::cout << csv;
        }
    } catch (const UnverifiedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
