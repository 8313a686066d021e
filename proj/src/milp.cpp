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

#include "gctk/milp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <sstream>

#include "gctk/bounds.hpp"
#include "gctk/errors.hpp"

namespace gctk {

namespace {

std::string pname(int r, int i) { return "p_" + std::to_string(r) + "_" + std::to_string(i); }
std::string zname(int i, int j, int r) {
    return "z_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(r);
}
std::string tname(int i, int j, int r) {
    return "t_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(r);
}
std::string wname(int r) { return "w_" + std::to_string(r); }
std::string bname(int r) { return "b_" + std::to_string(r); }
std::string rnname(int r) { return "rn_" + std::to_string(r); }
std::string dname(int r, int i) { return "d_" + std::to_string(r) + "_" + std::to_string(i); }

std::string tag_of_name(const std::string& name) {
    std::string tag;
    size_t pos = name.size() > 0 && name[0] == 'c' ? 1 : 0;
    while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos])))
        tag.push_back(name[pos++]);
    return tag;
}

constexpr int kMaxRowNumberBits = 40;  // 2^40 is the largest emitted coefficient

}  // namespace

int MipModel::add_var(std::string name, VarKind kind, Rational lower, Rational upper) {
    if (index.count(name)) throw Error("internal: duplicate variable " + name);
    const int id = static_cast<int>(vars.size());
    index.emplace(name, id);
    vars.push_back({std::move(name), kind, std::move(lower), std::move(upper)});
    return id;
}

int MipModel::var_id(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

int MipModel::require_var(const std::string& name) const {
    const int id = var_id(name);
    if (id < 0) throw MissingVariable(name);
    return id;
}

Rational sound_big_m(int n) {
    // (3n-2)^((3n-1)/2), rounded up through the square root when the
    // exponent is fractional.
    const long base = 3L * n - 2;
    const long e2 = 3L * n - 1;  // exponent times two
    Integer sq;
    mpz_ui_pow_ui(sq.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e2));
    Integer root;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    return Rational(root + 1);
}

MipModel build_cmipgc(const Graph& g, int R, const Rational& big_m, MipFlags flags) {
    const int n = g.vertex_count();
    if (R < 1) throw InvalidParameter("row budget R must be positive");
    if (big_m <= 0) throw InvalidParameter("big-M must be positive");

    MipModel m;
    m.n = n;
    m.R = R;
    m.big_m = big_m;
    m.flags = flags;

    const Rational M = big_m;
    for (int r = 1; r <= R; ++r)
        for (int i = 1; i <= n; ++i) m.add_var(pname(r, i), VarKind::binary, 0, 1);
    for (int r = 1; r <= R; ++r)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) m.add_var(zname(i, j, r), VarKind::binary, 0, 1);
    for (int r = 1; r <= R; ++r)
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) m.add_var(tname(i, j, r), VarKind::continuous, -M, M);
    for (int r = 1; r <= R; ++r) m.add_var(wname(r), VarKind::continuous, -M, M);
    for (int r = 1; r <= R; ++r) m.objective.push_back(m.add_var(bname(r), VarKind::binary, 0, 1));
    m.add_var("tr", VarKind::continuous, -M * R, M * R);
    const bool wide = n > kMaxRowNumberBits;
    if (!wide) {
        Integer top = 1;
        mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(n));
        for (int r = 1; r <= R; ++r)
            m.add_var(rnname(r), VarKind::integer, 1, Rational(top - 1));
    } else {
        for (int r = 1; r + 1 <= R; ++r)
            for (int i = 1; i <= n; ++i) m.add_var(dname(r, i), VarKind::binary, 0, 1);
    }

    auto adj = [&](int i, int j) { return g.edge(i - 1, j - 1) ? 1 : 0; };  // 1-indexed
    auto add_con = [&](std::string name, std::vector<std::pair<Rational, int>> terms,
                       ConstraintSense sense, Rational rhs) {
        MipConstraint c;
        c.tag = tag_of_name(name);
        c.name = std::move(name);
        c.terms = std::move(terms);
        c.sense = sense;
        c.rhs = std::move(rhs);
        m.cons.push_back(std::move(c));
    };
    // z reference for a product P'_i P'_j; the diagonal collapses to P'_i.
    auto zref = [&](int i, int j, int r) {
        return i == j ? m.require_var(pname(r, i)) : m.require_var(zname(i, j, r));
    };

    for (int r = 1; r <= R; ++r) {  // (2)
        const int w = m.require_var(wname(r)), b = m.require_var(bname(r));
        add_con("c2l_" + std::to_string(r), {{1, w}, {M, b}}, ConstraintSense::ge, 0);
        add_con("c2u_" + std::to_string(r), {{1, w}, {-M, b}}, ConstraintSense::le, 0);
    }
    for (int r = 1; r <= R; ++r)  // (3)-(5)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const int z = m.require_var(zname(i, j, r));
                const int pi = m.require_var(pname(r, i)), pj = m.require_var(pname(r, j));
                const std::string suffix =
                    std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(r);
                add_con("c3_" + suffix, {{1, z}, {-1, pi}}, ConstraintSense::le, 0);
                add_con("c4_" + suffix, {{1, z}, {-1, pj}}, ConstraintSense::le, 0);
                add_con("c5_" + suffix, {{1, z}, {-1, pi}, {-1, pj}}, ConstraintSense::ge, -1);
            }
    for (int r = 1; r <= R; ++r)  // (6)-(7)
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                const int t = m.require_var(tname(i, j, r));
                const int z = zref(i, j, r);
                const int w = m.require_var(wname(r));
                const std::string suffix =
                    std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(r);
                add_con("c6l_" + suffix, {{1, t}, {M, z}}, ConstraintSense::ge, 0);
                add_con("c6u_" + suffix, {{1, t}, {-M, z}}, ConstraintSense::le, 0);
                add_con("c7l_" + suffix, {{1, t}, {-1, w}, {-M, z}}, ConstraintSense::ge, -M);
                add_con("c7u_" + suffix, {{1, t}, {-1, w}, {M, z}}, ConstraintSense::le, M);
            }
    {  // (8)
        std::vector<std::pair<Rational, int>> terms{{1, m.require_var("tr")}};
        for (int r = 1; r <= R; ++r) terms.emplace_back(-1, m.require_var(wname(r)));
        add_con("c8", std::move(terms), ConstraintSense::eq, 0);
    }
    if (!flags.drop_tautologies) {  // (9), (10): first row/column of the gram identity
        std::vector<std::pair<Rational, int>> terms;
        for (int r = 1; r <= R; ++r) terms.emplace_back(4, m.require_var(tname(1, 1, r)));
        terms.emplace_back(-4, m.require_var("tr"));
        add_con("c9", std::move(terms), ConstraintSense::eq, 0);
        for (int j = 2; j <= n; ++j) {
            std::vector<std::pair<Rational, int>> t10;
            for (int r = 1; r <= R; ++r) t10.emplace_back(4, m.require_var(tname(1, j, r)));
            t10.emplace_back(-2, m.require_var("tr"));
            add_con("c10_" + std::to_string(j), std::move(t10), ConstraintSense::eq,
                    2 * adj(1, j));
        }
    }
    for (int i = 2; i <= n; ++i) {  // (11): diagonal entries (A_ii = 0)
        std::vector<std::pair<Rational, int>> terms;
        for (int r = 1; r <= R; ++r) terms.emplace_back(4, m.require_var(tname(i, i, r)));
        terms.emplace_back(-2, m.require_var("tr"));
        add_con("c11_" + std::to_string(i), std::move(terms), ConstraintSense::eq, 2 * adj(1, i));
    }
    for (int i = 2; i <= n; ++i)  // (12)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<std::pair<Rational, int>> terms;
            for (int r = 1; r <= R; ++r) terms.emplace_back(4, m.require_var(tname(i, j, r)));
            terms.emplace_back(-1, m.require_var("tr"));
            add_con("c12_" + std::to_string(i) + "_" + std::to_string(j), std::move(terms),
                    ConstraintSense::eq, adj(i, j) + adj(1, i) + adj(1, j));
        }
    for (int r = 1; r <= R; ++r)  // (13)
        add_con("c13_" + std::to_string(r), {{1, m.require_var(pname(r, 1))}},
                ConstraintSense::eq, 1);
    if (!wide) {  // (14)-(15)
        for (int r = 1; r <= R; ++r) {
            std::vector<std::pair<Rational, int>> terms{{1, m.require_var(rnname(r))}};
            Integer coeff = 1;
            for (int i = 1; i <= n; ++i) {
                terms.emplace_back(Rational(-coeff), m.require_var(pname(r, i)));
                coeff *= 2;
            }
            add_con("c14_" + std::to_string(r), std::move(terms), ConstraintSense::eq, 0);
        }
        for (int r = 1; r + 1 <= R; ++r)
            add_con("c15_" + std::to_string(r),
                    {{1, m.require_var(rnname(r))}, {-1, m.require_var(rnname(r + 1))}},
                    ConstraintSense::le, -2);
    } else {
        // First-difference ordering: d_r_i marks the most significant bit
        // where consecutive rows differ, row r low and row r+1 high.
        for (int r = 1; r + 1 <= R; ++r) {
            std::vector<std::pair<Rational, int>> sum;
            for (int i = 1; i <= n; ++i) sum.emplace_back(1, m.require_var(dname(r, i)));
            add_con("c15s_" + std::to_string(r), std::move(sum), ConstraintSense::eq, 1);
            for (int i = 1; i <= n; ++i) {
                const std::string suffix = std::to_string(r) + "_" + std::to_string(i);
                std::vector<std::pair<Rational, int>> high;
                for (int i2 = i; i2 <= n; ++i2) high.emplace_back(-1, m.require_var(dname(r, i2)));
                auto a = high;
                a.emplace_back(1, m.require_var(pname(r, i)));
                a.emplace_back(-1, m.require_var(pname(r + 1, i)));
                add_con("c15a_" + suffix, std::move(a), ConstraintSense::le, 0);
                auto b = high;
                b.emplace_back(-1, m.require_var(pname(r, i)));
                b.emplace_back(1, m.require_var(pname(r + 1, i)));
                add_con("c15b_" + suffix, std::move(b), ConstraintSense::le, 0);
                add_con("c15c_" + suffix,
                        {{1, m.require_var(pname(r, i))}, {1, m.require_var(dname(r, i))}},
                        ConstraintSense::le, 1);
                add_con("c15d_" + suffix,
                        {{1, m.require_var(pname(r + 1, i))}, {-1, m.require_var(dname(r, i))}},
                        ConstraintSense::ge, 0);
            }
        }
    }
    for (int r = 2; r <= R; ++r) {  // (16)
        std::vector<std::pair<Rational, int>> terms;
        for (int i = 1; i <= n; ++i) terms.emplace_back(1, m.require_var(pname(r, i)));
        add_con("c16_" + std::to_string(r), std::move(terms), ConstraintSense::ge, 2);
    }
    if (flags.padberg) {  // (17), optionally capped lowest-index-first
        for (int r = 1; r <= R; ++r) {
            long emitted = 0;
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) {
                        if (flags.padberg_budget > 0 && emitted >= flags.padberg_budget) goto done;
                        add_con("c17_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                    std::to_string(k) + "_" + std::to_string(r),
                                {{1, m.require_var(pname(r, i))},
                                 {1, m.require_var(pname(r, j))},
                                 {1, m.require_var(pname(r, k))},
                                 {-1, m.require_var(zname(i, j, r))},
                                 {-1, m.require_var(zname(i, k, r))},
                                 {-1, m.require_var(zname(j, k, r))}},
                                ConstraintSense::le, 1);
                        ++emitted;
                    }
        done:;
        }
    }
    if (flags.lb_cut) {  // (18)
        m.lb_cut_value = spectral_lower_bound(g).lower_bound;
        std::vector<std::pair<Rational, int>> terms;
        for (int r = 1; r <= R; ++r) terms.emplace_back(1, m.require_var(bname(r)));
        add_con("c18", std::move(terms), ConstraintSense::ge, m.lb_cut_value);
    }
    if (flags.ones_row) {
        for (int i = 1; i <= n; ++i)
            add_con("cones_" + std::to_string(i), {{1, m.require_var(pname(R, i))}},
                    ConstraintSense::eq, 1);
    }
    return m;
}

namespace {

std::string render_value(const Rational& q, const std::string& context, std::string* sidecar) {
    bool exact = true;
    std::string s = rational_to_decimal(q, &exact);
    if (!exact && sidecar != nullptr)
        *sidecar += context + " " + rational_to_slash(q) + "\n";
    return s;
}

void render_terms(std::ostringstream& out, const MipModel& m,
                  const std::vector<std::pair<Rational, int>>& terms, const std::string& context,
                  std::string* sidecar) {
    bool first = true;
    int line_len = 0;
    for (const auto& [coeff, var] : terms) {
        std::string piece;
        const Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
        if (first) {
            if (coeff == 1)
                piece = m.vars[var].name;
            else if (coeff == -1)
                piece = "- " + m.vars[var].name;
            else
                piece = render_value(coeff, context + ":" + m.vars[var].name, sidecar) + " " +
                        m.vars[var].name;
        } else {
            piece = coeff < 0 ? "- " : "+ ";
            if (mag != 1)
                piece += render_value(mag, context + ":" + m.vars[var].name, sidecar) + " ";
            piece += m.vars[var].name;
        }
        if (!first) {
            if (line_len > 200) {
                out << "\n  ";
                line_len = 2;
            } else {
                out << ' ';
                ++line_len;
            }
        }
        out << piece;
        line_len += static_cast<int>(piece.size());
        first = false;
    }
}

const char* sense_str(ConstraintSense s) {
    switch (s) {
        case ConstraintSense::le: return "<=";
        case ConstraintSense::ge: return ">=";
        default: return "=";
    }
}

}  // namespace

ModelText emit_model(const MipModel& m) {
    ModelText out;
    std::ostringstream lp;
    lp << "\\ CMIPGC n=" << m.n << " R=" << m.R << " M=" << rational_to_compact(m.big_m)
       << " padberg=" << m.flags.padberg << " drop_tautologies=" << m.flags.drop_tautologies
       << " lb_cut=" << m.flags.lb_cut << " ones_row=" << m.flags.ones_row
       << " lb=" << m.lb_cut_value << "\n";
    lp << "Minimize\n obj:";
    int obj_len = 5;
    for (size_t i = 0; i < m.objective.size(); ++i) {
        if (obj_len > 200) {
            lp << "\n  ";
            obj_len = 2;
        }
        const std::string& name = m.vars[m.objective[i]].name;
        lp << (i == 0 ? " " : " + ") << name;
        obj_len += static_cast<int>(name.size()) + 3;
    }
    lp << "\nSubject To\n";
    for (const auto& c : m.cons) {
        lp << " " << c.name << ": ";
        std::ostringstream body;
        render_terms(body, m, c.terms, c.name, &out.sidecar);
        lp << body.str() << " " << sense_str(c.sense) << " "
           << render_value(c.rhs, c.name + ":rhs", &out.sidecar) << "\n";
    }
    lp << "Bounds\n";
    for (const auto& v : m.vars) {
        if (v.kind == VarKind::binary) continue;
        lp << " " << render_value(v.lower, v.name + ":lo", &out.sidecar) << " <= " << v.name
           << " <= " << render_value(v.upper, v.name + ":up", &out.sidecar) << "\n";
    }
    auto emit_names = [&](VarKind kind, const char* header) {
        bool any = false;
        for (const auto& v : m.vars)
            if (v.kind == kind) any = true;
        if (!any) return;
        lp << header << "\n ";
        int line_len = 1;
        for (const auto& v : m.vars) {
            if (v.kind != kind) continue;
            if (line_len > 200) {
                lp << "\n ";
                line_len = 1;
            }
            lp << ' ' << v.name;
            line_len += static_cast<int>(v.name.size()) + 1;
        }
        lp << "\n";
    };
    emit_names(VarKind::binary, "Binaries");
    emit_names(VarKind::integer, "Generals");
    lp << "End\n";
    out.lp = lp.str();
    return out;
}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool parse_value_token(const std::string& tok, Rational* out) {
    if (tok.empty()) return false;
    const char c = tok[0];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.'))
        return false;
    try {
        *out = rational_from_string(tok);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

MipModel parse_model(const std::string& lp_text) {
    MipModel m;
    auto ensure_var = [&](const std::string& name) {
        int id = m.var_id(name);
        if (id < 0) id = m.add_var(name, VarKind::continuous, 0, 0);
        return id;
    };

    // Header metadata (written by emit_model).
    {
        std::istringstream in(lp_text);
        std::string line;
        if (std::getline(in, line) && line.rfind("\\ CMIPGC", 0) == 0) {
            std::istringstream ls(line.substr(8));
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "n") m.n = std::stoi(val);
                else if (key == "R") m.R = std::stoi(val);
                else if (key == "M") m.big_m = rational_from_string(val);
                else if (key == "padberg") m.flags.padberg = val == "1";
                else if (key == "drop_tautologies") m.flags.drop_tautologies = val == "1";
                else if (key == "lb_cut") m.flags.lb_cut = val == "1";
                else if (key == "ones_row") m.flags.ones_row = val == "1";
                else if (key == "lb") m.lb_cut_value = std::stoi(val);
            }
        }
    }

    enum Section { none, objective, constraints, bounds, binaries, generals, done };
    Section section = none;
    std::vector<std::string> con_tokens;  // joined Subject To tokens
    std::istringstream in(lp_text);
    std::string line;
    std::vector<std::string> objective_tokens;
    while (std::getline(in, line)) {
        auto slash = line.find('\\');
        if (slash != std::string::npos) line = line.substr(0, slash);
        std::string trimmed = line;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
            trimmed.erase(trimmed.begin());
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty()) continue;
        const std::string low = lower(trimmed);
        if (low == "minimize" || low == "min") { section = objective; continue; }
        if (low == "maximize" || low == "max") throw ParseError("maximization not supported");
        if (low == "subject to" || low == "st" || low == "s.t.") { section = constraints; continue; }
        if (low == "bounds") { section = bounds; continue; }
        if (low == "binaries" || low == "binary") { section = binaries; continue; }
        if (low == "generals" || low == "general") { section = generals; continue; }
        if (low == "end") { section = done; continue; }

        std::istringstream ls(line);
        std::string tok;
        if (section == objective) {
            while (ls >> tok) objective_tokens.push_back(tok);
        } else if (section == constraints) {
            while (ls >> tok) con_tokens.push_back(tok);
        } else if (section == bounds) {
            std::vector<std::string> toks;
            while (ls >> tok) toks.push_back(tok);
            if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
                const int id = ensure_var(toks[2]);
                m.vars[id].lower = rational_from_string(toks[0]);
                m.vars[id].upper = rational_from_string(toks[4]);
            } else if (toks.size() == 3 && (toks[1] == "<=" || toks[1] == ">=" || toks[1] == "=")) {
                const int id = ensure_var(toks[0]);
                const Rational v = rational_from_string(toks[2]);
                if (toks[1] == "<=") m.vars[id].upper = v;
                else if (toks[1] == ">=") m.vars[id].lower = v;
                else { m.vars[id].lower = v; m.vars[id].upper = v; }
            } else if (!toks.empty()) {
                throw ParseError("unsupported bounds line '" + line + "'");
            }
        } else if (section == binaries || section == generals) {
            while (ls >> tok) {
                const int id = ensure_var(tok);
                m.vars[id].kind = section == binaries ? VarKind::binary : VarKind::integer;
                if (section == binaries) {
                    m.vars[id].lower = 0;
                    m.vars[id].upper = 1;
                }
            }
        }
    }

    // Objective: "obj: b_1 + b_2 ..." with unit coefficients.
    for (const auto& t : objective_tokens) {
        if (t == "+" || t.back() == ':') continue;
        if (!is_name_start(t[0])) throw ParseError("unsupported objective term '" + t + "'");
        m.objective.push_back(ensure_var(t));
    }

    // Constraints: name: expr sense rhs ...
    size_t pos = 0;
    while (pos < con_tokens.size()) {
        std::string name = con_tokens[pos];
        if (name.back() != ':') throw ParseError("expected constraint name, got '" + name + "'");
        name.pop_back();
        ++pos;
        MipConstraint c;
        c.name = name;
        c.tag = tag_of_name(name);
        Rational pending_coeff = 1;
        bool have_coeff = false;
        bool negative = false;
        bool done_lhs = false;
        while (pos < con_tokens.size() && !done_lhs) {
            const std::string& t = con_tokens[pos];
            if (t == "+") { negative = false; ++pos; continue; }
            if (t == "-") { negative = true; ++pos; continue; }
            if (t == "<=" || t == ">=" || t == "=") {
                c.sense = t == "<=" ? ConstraintSense::le
                                    : (t == ">=" ? ConstraintSense::ge : ConstraintSense::eq);
                ++pos;
                if (pos >= con_tokens.size()) throw ParseError("missing rhs in " + name);
                c.rhs = rational_from_string(con_tokens[pos]);
                ++pos;
                done_lhs = true;
                continue;
            }
            Rational value;
            if (parse_value_token(t, &value)) {
                pending_coeff = negative ? Rational(-value) : value;
                have_coeff = true;
                negative = false;
                ++pos;
                continue;
            }
            if (!is_name_start(t[0])) throw ParseError("unexpected token '" + t + "'");
            Rational coeff = have_coeff ? pending_coeff : (negative ? Rational(-1) : Rational(1));
            c.terms.emplace_back(std::move(coeff), ensure_var(t));
            have_coeff = false;
            negative = false;
            pending_coeff = 1;
            ++pos;
        }
        if (!done_lhs) throw ParseError("constraint " + name + " has no sense");
        m.cons.push_back(std::move(c));
    }
    return m;
}

WarmStartText emit_warmstart(const Decomposition& d, const MipModel& m) {
    if (d.vertex_count() != m.n) throw DimensionMismatch("decomposition n differs from model");
    if (d.row_count() != m.R)
        throw InvalidParameter("decomposition has " + std::to_string(d.row_count()) +
                               " rows but the model budget is R=" + std::to_string(m.R));
    if (!d.is_canonical()) throw InvalidParameter("warm start requires a canonical decomposition");

    const int n = m.n, R = m.R;
    WarmStartText out;
    out.ws.values.assign(m.vars.size(), Rational(0));
    auto set = [&](const std::string& name, const Rational& v) {
        out.ws.values[m.require_var(name)] = v;
    };
    // p and helpers; rows are already sorted ascending by row number.
    const auto& rows = d.rows();
    for (int r = 1; r <= R; ++r) {
        const SignRow& row = rows[r - 1].row;
        for (int i = 1; i <= n; ++i) set(pname(r, i), row.test(i - 1) ? 0 : 1);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                set(zname(i, j, r), (!row.test(i - 1) && !row.test(j - 1)) ? 1 : 0);
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                const bool z = !row.test(i - 1) && !row.test(j - 1);
                set(tname(i, j, r), z ? rows[r - 1].weight : Rational(0));
            }
        set(wname(r), rows[r - 1].weight);
        set(bname(r), 1);
    }
    set("tr", d.trace());
    if (n <= kMaxRowNumberBits) {
        for (int r = 1; r <= R; ++r) {
            Integer rn = 0, coeff = 1;
            for (int i = 1; i <= n; ++i) {
                if (!rows[r - 1].row.test(i - 1)) rn += coeff;
                coeff *= 2;
            }
            set(rnname(r), Rational(rn));
        }
    } else {
        for (int r = 1; r + 1 <= R; ++r) {
            int diff = -1;
            for (int i = n; i >= 1; --i)
                if (rows[r - 1].row.test(i - 1) != rows[r].row.test(i - 1)) {
                    diff = i;
                    break;
                }
            if (diff < 0) throw InconsistentWarmStart("duplicate rows in warm start");
            set(dname(r, diff), 1);
        }
    }

    const EvalReport report = evaluate(m, out.ws.values);
    if (!report.feasible)
        throw InconsistentWarmStart("assignment violates " +
                                    (report.violated.empty() ? std::string("bounds")
                                                             : report.violated.front()));
    std::ostringstream text;
    for (size_t id = 0; id < m.vars.size(); ++id)
        text << m.vars[id].name << " "
             << render_value(out.ws.values[id], m.vars[id].name, &out.sidecar) << "\n";
    out.text = text.str();
    return out;
}

EvalReport evaluate(const MipModel& m, const std::vector<Rational>& values) {
    if (values.size() != m.vars.size())
        throw MissingVariable("assignment covers " + std::to_string(values.size()) + " of " +
                              std::to_string(m.vars.size()) + " variables");
    EvalReport report;
    report.max_violation = 0;
    auto record = [&](const std::string& name, const Rational& violation) {
        if (violation <= 0) return;
        report.violated.push_back(name);
        if (violation > report.max_violation) report.max_violation = violation;
    };
    for (const auto& c : m.cons) {
        Rational lhs = 0;
        for (const auto& [coeff, var] : c.terms) lhs += coeff * values[var];
        Rational violation = 0;
        if (c.sense == ConstraintSense::le)
            violation = lhs - c.rhs;
        else if (c.sense == ConstraintSense::ge)
            violation = c.rhs - lhs;
        else
            violation = abs(Rational(lhs - c.rhs));
        record(c.name, violation);
    }
    for (size_t id = 0; id < m.vars.size(); ++id) {
        const auto& v = m.vars[id];
        record("bound:" + v.name, v.lower - values[id]);
        record("bound:" + v.name, values[id] - v.upper);
        if (v.kind != VarKind::continuous) {
            const Rational frac = values[id] - Rational(Integer(values[id]));  // truncation
            if (frac != 0) record("integrality:" + v.name, abs(frac));
        }
    }
    report.objective = 0;
    for (int id : m.objective) report.objective += values[id];
    report.feasible = report.violated.empty();
    return report;
}

std::unordered_map<std::string, Rational> parse_assignment(const std::string& text,
                                                           const std::string& sidecar) {
    std::unordered_map<std::string, Rational> map;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && (line[0] == '\\' || line[0] == '#')) continue;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        for (size_t i = 0; i + 1 < toks.size(); ++i) {
            if (!is_name_start(toks[i][0])) continue;
            Rational value;
            if (parse_value_token(toks[i + 1], &value)) {
                map[toks[i]] = value;
                ++i;
            }
        }
    }
    std::istringstream side(sidecar);
    while (std::getline(side, line)) {
        std::istringstream ls(line);
        std::string name, value;
        if (ls >> name >> value) map[name] = rational_from_string(value);
    }
    return map;
}

std::vector<Rational> assignment_from_map(const MipModel& m,
                                          const std::unordered_map<std::string, Rational>& map,
                                          bool missing_as_zero,
                                          std::vector<std::string>* unknown) {
    std::vector<Rational> values(m.vars.size(), Rational(0));
    std::vector<bool> seen(m.vars.size(), false);
    for (const auto& [name, value] : map) {
        const int id = m.var_id(name);
        if (id < 0) {
            if (unknown != nullptr) unknown->push_back(name);
            continue;
        }
        values[id] = value;
        seen[id] = true;
    }
    if (!missing_as_zero) {
        for (size_t id = 0; id < m.vars.size(); ++id)
            if (!seen[id]) throw MissingVariable(m.vars[id].name);
    }
    return values;
}

CompileResult ingest_solution(const std::string& text, const Graph& g, const MipModel& m) {
    if (g.vertex_count() != m.n) throw DimensionMismatch("graph n differs from model");
    const auto map = parse_assignment(text);
    if (map.empty()) throw ParseError("no variable assignments found in solution listing");
    std::vector<std::string> unknown;
    const auto values = assignment_from_map(m, map, /*missing_as_zero=*/true, &unknown);
    if (!unknown.empty())
        std::cerr << "warning: ignoring " << unknown.size()
                  << " unknown variable name(s), first '" << unknown.front() << "'\n";

    const int n = m.n;
    auto binary_on = [&](const std::string& name) {
        return values[m.require_var(name)] >= make_rational(1, 2);
    };
    Decomposition snapped(n);
    Decomposition raw(n);
    for (int r = 1; r <= m.R; ++r) {
        if (!binary_on(bname(r))) continue;
        SignRow row(n);
        for (int i = 1; i <= n; ++i)
            if (!binary_on(pname(r, i))) row.set(i - 1);
        const Rational w_raw = values[m.require_var(wname(r))];
        snapped.append(row, snap_to_denominator(rational_to_double(w_raw), 64));
        raw.append(row, w_raw);
    }
    const int lb = spectral_lower_bound(g).lower_bound;
    Decomposition canon = simplify(snapped);
    if (verify(g, canon).feasible)
        return CompileResult{canon, "mip", canon.row_count(), lb, true};

    // Exact reconstruction failed; accept the raw weights under a float
    // tolerance and mark the result numeric.
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j) {
            double sum = 0;
            for (const auto& row : raw.rows())
                sum += rational_to_double(row.weight) *
                       (row.row.test(i) == row.row.test(j) ? 1 : -1);
            ok = std::fabs(sum - (g.edge(i, j) ? 1.0 : 0.0)) <= 1e-6;
        }
    if (!ok) throw InfeasibleSolution("solution verifies neither exactly nor within 1e-6");
    Decomposition canon_raw = simplify(raw);
    return CompileResult{canon_raw, "mip-numeric", canon_raw.row_count(), lb, true};
}

ModelSize expected_model_size(int n, int R, MipFlags flags) {
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    const long with_diag = pairs + n;
    ModelSize size;
    size.variables = static_cast<long>(R) * (n + pairs + with_diag + 2) + 1 + R;  // p,z,t,w,b + tr + rn
    size.constraints = 2L * R                 // (2)
                       + 3L * pairs * R       // (3)-(5)
                       + 4L * with_diag * R   // (6)-(7)
                       + 1                    // (8)
                       + (flags.drop_tautologies ? 0 : n)        // (9),(10)
                       + (n - 1)              // (11)
                       + (n - 1) * (n - 2) / 2  // (12)
                       + R                    // (13)
                       + R                    // (14)
                       + (R - 1)              // (15)
                       + (R - 1)              // (16)
                       + (flags.padberg
                              ? (flags.padberg_budget > 0
                                     ? std::min(flags.padberg_budget,
                                                static_cast<long>(n) * (n - 1) * (n - 2) / 6) * R
                                     : static_cast<long>(n) * (n - 1) * (n - 2) / 6 * R)
                              : 0)
                       + (flags.lb_cut ? 1 : 0)
                       + (flags.ones_row ? n : 0);
    return size;
}

}  // namespace gctk
