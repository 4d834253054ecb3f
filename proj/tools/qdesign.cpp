/*
   Copyright 2026 The qdesign Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// qdesign command-line tool. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error, 3 search budget exhausted.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qdesign/bundled.hpp"
#include "qdesign/decomp.hpp"
#include "qdesign/io.hpp"
#include "qdesign/km.hpp"
#include "qdesign/partition.hpp"

using namespace qdesign;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Options {
    unsigned threads = 0;

    // shared by several commands
    unsigned q = 0;
    int v = -1, k = -1, t = -1;
    std::string file, out;
    bool json = false;

    // enumerate
    std::uint64_t limit = 0;
    bool paths = false;

    // decompose
    std::string kind;
    int u = -1, s = -1;
    bool verify = false;

    // verify
    std::string lambda;

    // admissible
    std::string N = "2";

    // tables
    std::string table;
    int v_min = 6, v_max = 38;

    // transform
    int d = 0;

    // km
    std::string bundled, poly, group, normalizer, strategy, selection;
    std::vector<std::string> overgroups;
    std::int64_t km_lambda = -1;
    int dim = -1;
    std::uint64_t budget = 0;
    bool all = false, list = false;

    // recurse
    std::string base, mode = "plan";
    int recurse_N = 2;
    std::uint64_t samples = 10, seed = 1;
};

std::string codes_of(const Subspace& s) {
    std::string out;
    for (auto c : encode_block(s)) {
        if (!out.empty()) out += ' ';
        out += std::to_string(c);
    }
    return out;
}

std::string ks_string(const std::vector<int>& ks) {
    std::string out;
    for (int k : ks) out += (out.empty() ? "" : ",") + std::to_string(k);
    return out;
}

std::ostream& output(const Options& o, std::ofstream& file) {
    if (o.out.empty() || o.out == "-") return std::cout;
    file.open(o.out);
    if (!file) throw Error("cannot write " + o.out);
    return file;
}

// ---------------------------------------------------------------------------

int cmd_binom(const Options& o) {
    std::cout << gaussian_binomial(o.v, o.k, o.q) << "\n";
    return kOk;
}

int cmd_enumerate(const Options& o) {
    auto field = GaloisField::make(o.q);
    std::uint64_t n = 0;
    for_each_subspace(field, o.v, o.k, [&](const Subspace& s) {
        std::cout << codes_of(s);
        if (o.paths) {
            std::cout << " ";
            for (const auto& step : subspace_to_path(s).steps) {
                if (step.vertical) {
                    std::cout << " V";
                    continue;
                }
                std::cout << " H(";
                for (std::size_t i = 0; i < step.label.size(); ++i) std::cout << (i ? "," : "") << unsigned(step.label[i]);
                std::cout << ")";
            }
        }
        std::cout << "\n";
        return !o.limit || ++n < o.limit;
    });
    return kOk;
}

int cmd_decompose(const Options& o) {
    const auto kind = parse_decomposition_kind(o.kind);
    int param = 0;
    if (kind == DecompositionKind::Vandermonde) {
        if (o.u < 0) throw CLI::ValidationError("--u", "vandermonde needs --u");
        param = o.u;
    } else if (kind == DecompositionKind::Avoid || kind == DecompositionKind::Cover) {
        if (o.s < 0) throw CLI::ValidationError("--s", to_string(kind) + " needs --s");
        param = o.s;
    }
    const auto plan = make_decomposition(kind, o.v, o.k, o.q, param);
    std::cout << plan.describe();
    const auto id = verify_identity(plan);
    std::cout << "identity: [" << o.v << "," << o.k << "]_" << o.q << " = " << id.lhs << " = " << id.rhs << " (sum of cells)\n";
    if (o.verify) {
        try {
            const auto rep = verify_partition(plan);
            std::cout << "partition: " << rep.total << " subspaces, cells disjoint and covering\n";
        } catch (const Error& e) {
            std::cout << "partition: FAILED: " << e.what() << "\n";
            return kFailed;
        }
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    const auto file = load_design_file(o.file);
    VerifyReport r;
    std::string what;
    if (file.kind == FileKind::Design) {
        SubspaceDesign d = file.design;
        if (o.t >= 0) d.t = o.t;
        if (!o.lambda.empty()) d.lambda = BigCount(o.lambda);
        else if (o.t >= 0 && !file.lambda_given) {
            auto l = implied_lambda(d.blocks, d.t);
            if (!l) throw Error("no lambda given and the block count does not determine one");
            d.lambda = *l;
        }
        r = verify_design(d, o.threads);
        std::ostringstream ss;
        ss << d.t << "-(" << d.v() << "," << d.k() << "," << d.lambda << ")_" << d.q() << " design";
        what = ss.str();
    } else {
        LargeSet ls = file.large_set;
        if (o.t >= 0) ls.t = o.t;
        r = verify_large_set(ls, o.threads);
        std::ostringstream ss;
        ss << "LS_" << ls.field()->q() << "[" << ls.N() << "](" << ls.t << "," << ls.k() << "," << ls.v() << ") lambda=" << ls.lambda();
        what = ss.str();
    }
    if (o.json) {
        auto j = report_json(r);
        j["file"] = o.file;
        j["object"] = what;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (r.ok ? "OK " : "FAILED ") << what << ": " << r.blocks << " blocks, " << r.t_subspaces
                  << " t-subspaces checked\n";
        if (!r.ok) {
            std::cout << r.message << "\n";
            if (r.witness) std::cout << "witness T = " << codes_of(*r.witness) << " (count " << r.witness_count << ")\n";
        }
    }
    return r.ok ? kOk : kFailed;
}

int cmd_admissible(const Options& o) {
    const bool ok = admissible(o.q, BigCount(o.N), o.t, o.k, o.v);
    std::cout << "LS_" << o.q << "[" << o.N << "](" << o.t << "," << o.k << "," << o.v << ") is "
              << (ok ? "admissible" : "not admissible") << "\n";
    return ok ? kOk : kFailed;
}

int cmd_tables(const Options& o) {
    if (o.table == "smallest-halvings") {
        std::cout << "q\tv\tk\tlambda\tsize\n";
        for (const auto& r : smallest_halvings())
            std::cout << r.q << "\t" << r.v << "\t" << ks_string(r.ks) << "\t" << r.lambda << "\t" << r.size << "\n";
        return kOk;
    }
    if (o.table == "admissibility") {
        std::vector<unsigned> qs = o.q ? std::vector<unsigned>{o.q} : std::vector<unsigned>{3, 5};
        for (unsigned q : qs) {
            std::cout << "LS_" << q << "[2](2,k,v), k = 3.." << "v/2  ('-' not admissible, k realized, '?' open)\n";
            for (const auto& [v, row] : admissibility_table(q, o.v_min, o.v_max)) {
                std::cout << (v < 10 ? " " : "") << v << ":";
                for (const auto& e : row) std::cout << ' ' << e;
                std::cout << "\n";
            }
        }
        return kOk;
    }
    throw CLI::ValidationError("table", "expected smallest-halvings or admissibility");
}

int cmd_transform(const Options& o) {
    const auto kind = parse_transform_kind(o.kind);
    auto file = load_design_file(o.file);
    const bool was_design = file.kind == FileKind::Design;
    LargeSet in = was_design ? LargeSet{file.design.t, {file.design.blocks}} : file.large_set;
    LargeSet res = transform(in, kind, o.d);
    std::ofstream f;
    auto& out = output(o, f);
    if (was_design && res.N() == 1) {
        SubspaceDesign d{res.t, 0, res.parts[0]};
        auto l = implied_lambda(d.blocks, d.t);
        d.lambda = l ? *l : BigCount(0);
        write_design(out, d);
    } else {
        write_large_set(out, res);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// km

struct KMSetup {
    FieldPtr field;
    MatGF sigma, phi;
    const BundledInstance* bundled = nullptr;
    int t = 2, k = 3;
    std::uint64_t lambda = 0;
    std::string group;
};

KMSetup km_setup(const Options& o) {
    KMSetup s;
    unsigned q = o.q;
    int v = o.v;
    std::string poly = o.poly;
    s.group = o.group;
    if (!o.bundled.empty()) {
        s.bundled = &bundled_instance(o.bundled);
        if (!q) q = s.bundled->q;
        if (v < 0) v = s.bundled->v;
        if (poly.empty()) poly = s.bundled->polynomial;
        if (s.group.empty()) s.group = s.bundled->group;
        s.lambda = s.bundled->lambda;
        s.t = s.bundled->t;
        s.k = s.bundled->k;
    }
    if (!q || poly.empty() || s.group.empty())
        throw CLI::ValidationError("km", "need --q, --poly and --group (or --bundled q3|q5)");
    if (o.t >= 0) s.t = o.t;
    if (o.k >= 0) s.k = o.k;
    if (o.km_lambda >= 0) s.lambda = static_cast<std::uint64_t>(o.km_lambda);
    s.field = GaloisField::make(q);
    const auto p = PrimitivePolynomial::parse(s.field, poly);
    if (v >= 0 && p.degree() != v)
        throw Error("polynomial has degree " + std::to_string(p.degree()) + " but v = " + std::to_string(v));
    s.sigma = singer_matrix(p);
    s.phi = frobenius_matrix(p);
    return s;
}

int km_orbits(const Options& o) {
    auto s = km_setup(o);
    ProjectiveGroup g(parse_word_spec(s.group, s.sigma, s.phi));
    const int d = o.dim >= 0 ? o.dim : s.k;
    OrbitTable table(g, d);
    std::uint64_t total = 0;
    for (auto x : table.sizes()) total += x;
    std::cout << "group <" << s.group << "> order " << g.order() << "\n";
    std::cout << "orbits on " << d << "-subspaces: " << table.count() << ", total " << total << "\n";
    std::cout << "profile " << table.profile_string() << "\n";
    if (o.list)
        for (std::size_t j = 0; j < table.count(); ++j)
            std::cout << j << "\t" << table.size(j) << "\t" << codes_of(table.representative(j)) << "\n";
    return kOk;
}

// Counting visits every solution, so it defaults to the lattice search.
SolverStrategy strategy_for(const Options& o, SolverStrategy fallback) {
    return o.strategy.empty() ? fallback : parse_solver_strategy(o.strategy);
}

KMInstance km_instance(const KMSetup& s) {
    ProjectiveGroup g(parse_word_spec(s.group, s.sigma, s.phi));
    return KMInstance(g, s.t, s.k, s.lambda);
}

int km_matrix(const Options& o) {
    auto s = km_setup(o);
    auto inst = km_instance(s);
    std::cout << "# " << inst.rows() << " x " << inst.cols() << " orbit matrix, lambda " << inst.lambda() << "\n";
    std::cout << "# column orbit sizes:";
    for (std::size_t j = 0; j < inst.cols(); ++j) std::cout << ' ' << inst.k_orbits().size(j);
    std::cout << "\n";
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        std::cout << inst.t_orbits().size(i) << ":";
        for (std::size_t j = 0; j < inst.cols(); ++j) std::cout << ' ' << inst.a(i, j);
        std::cout << "\n";
    }
    return kOk;
}

int km_solve_cmd(const Options& o, bool count_only) {
    auto s = km_setup(o);
    auto inst = km_instance(s);
    const auto strategy = strategy_for(o, count_only ? SolverStrategy::Lattice : SolverStrategy::Backtrack);
    if (count_only) {
        auto r = km_solve(inst, SolveMode::Count, o.budget, {}, strategy);
        std::cout << "solutions " << r.count << (r.exhausted ? " (partial: budget exhausted)" : "") << "  nodes "
                  << r.nodes << "\n";
        return r.exhausted ? kBudget : kOk;
    }
    auto r = km_solve(inst, o.all ? SolveMode::Enumerate : SolveMode::First, o.budget, {}, strategy);
    for (const auto& sol : r.solutions) {
        std::cout << "solution:";
        for (auto j : sol) std::cout << ' ' << j;
        std::cout << "\n";
    }
    if (r.solutions.empty()) {
        std::cout << (r.exhausted ? "budget exhausted before a solution was found\n" : "no solution\n");
        return r.exhausted ? kBudget : kFailed;
    }
    const auto& sol = r.solutions.front();
    SubspaceDesign d = assemble_design(inst, sol);
    auto rep = verify_design(d, o.threads);
    std::cout << "design " << d.t << "-(" << d.v() << "," << d.k() << "," << d.lambda << ")_" << d.q() << " with "
              << d.blocks.size() << " blocks: " << (rep.ok ? "verified" : "FAILED " + rep.message) << "\n";
    if (!o.out.empty()) {
        std::ofstream f;
        auto& out = output(o, f);
        out << "# orbit representatives\n";
        write_design(out, d);
    }
    if (!o.selection.empty()) {
        std::ofstream f(o.selection);
        for (auto j : sol) f << codes_of(inst.k_orbits().representative(j)) << "\n";
    }
    if (!rep.ok) return kFailed;
    return r.exhausted ? kBudget : kOk;
}

int km_check_selection(const Options& o) {
    auto s = km_setup(o);
    auto inst = km_instance(s);
    std::vector<std::vector<std::uint64_t>> codes;
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw Error("cannot read " + o.file);
        std::stringstream ss;
        ss << in.rdbuf();
        codes = parse_code_lines(ss.str());
    } else if (s.bundled && !s.bundled->selection.empty()) {
        codes = s.bundled->selection_codes();
    } else {
        throw CLI::ValidationError("selection", "give a selection file");
    }
    const auto sel = selection_from_codes(inst, codes);
    std::map<std::uint64_t, std::size_t> classes;
    for (auto j : sel) ++classes[inst.k_orbits().size(j)];
    std::cout << sel.size() << " orbits selected:";
    for (const auto& [size, n] : classes) std::cout << ' ' << n << "x" << size;
    std::cout << "\n";
    auto srep = verify_selection(inst, sel);
    if (!srep.ok) {
        std::cout << "A x != lambda at row " << *srep.failing_row << " (value " << srep.failing_value << ", lambda "
                  << inst.lambda() << ")\n";
        return kFailed;
    }
    std::cout << "A x = " << inst.lambda() << " * 1 holds on all " << inst.rows() << " rows\n";
    SubspaceDesign d = assemble_design(inst, sel);
    auto rep = verify_design(d, o.threads);
    std::cout << "design " << d.t << "-(" << d.v() << "," << d.k() << "," << d.lambda << ")_" << d.q() << ": "
              << d.blocks.size() << " blocks, " << rep.t_subspaces << " t-subspaces: "
              << (rep.ok ? "verified" : "FAILED " + rep.message) << "\n";
    if (!rep.ok) return kFailed;
    auto supp = supplementary(d);
    auto srep2 = verify_design(supp, o.threads);
    std::cout << "supplementary " << supp.t << "-(" << supp.v() << "," << supp.k() << "," << supp.lambda << ")_"
              << supp.q() << ": " << supp.blocks.size() << " blocks: " << (srep2.ok ? "verified" : "FAILED") << "\n";
    if (!o.out.empty()) {
        std::ofstream f;
        LargeSet ls{d.t, {d.blocks, supp.blocks}};
        write_large_set(output(o, f), ls);
    }
    return srep2.ok ? kOk : kFailed;
}

int km_isotypes(const Options& o) {
    auto s = km_setup(o);
    auto inst = km_instance(s);
    std::string normalizer = o.normalizer;
    std::vector<std::string> overs = o.overgroups;
    if (s.bundled) {
        if (normalizer.empty()) normalizer = s.bundled->normalizer;
        if (overs.empty()) overs = s.bundled->overgroups;
    }
    if (normalizer.empty()) throw CLI::ValidationError("--normalizer", "needed without --bundled");
    std::vector<std::pair<std::string, std::vector<MatGF>>> groups;
    for (const auto& w : overs) groups.push_back({w, parse_word_spec(w, s.sigma, s.phi)});
    ProjectiveGroup n(parse_word_spec(normalizer, s.sigma, s.phi));
    IsotypeReport rep;
    try {
        rep = isomorphism_type_count(inst, n, groups, o.budget, strategy_for(o, SolverStrategy::Lattice));
    } catch (const Error& e) {
        std::cout << "FAILED: " << e.what() << "\n";
        return kFailed;
    }
    for (const auto& g : rep.overgroups)
        std::cout << "overgroup <" << g.word_spec << "> order " << g.order << ": " << g.count << " designs"
                  << (g.exhausted ? " (budget exhausted)" : "") << "\n";
    if (rep.exhausted) {
        std::cout << "budget exhausted\n";
        return kBudget;
    }
    std::cout << "G-invariant designs " << rep.solutions << ", [N : G] = " << rep.index << ", isomorphism types "
              << rep.isotypes << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// recurse

LargeSet load_base(const Options& o) {
    if (o.base == "q3" || o.base == "q5") return bundled_halving(bundled_instance(o.base));
    auto f = load_design_file(o.base);
    if (f.kind != FileKind::LargeSet) throw Error(o.base + " is not a large-set file");
    return f.large_set;
}

int cmd_recurse(const Options& o) {
    LargeSet base = load_base(o);
    if (o.q && base.field()->q() != o.q) throw Error("base large set lives over GF(" + std::to_string(base.field()->q()) + ")");
    if (base.N() != o.recurse_N) throw Error("base large set has N = " + std::to_string(base.N()));
    auto plan = recurse_two_parameter(explicit_large_set(base), o.k, o.v);
    const BigCount expected = gaussian_binomial(o.v - 2, o.k - 2, plan->field()->q()) / plan->N();
    if (o.mode == "plan") {
        std::cout << describe(plan);
        return kOk;
    }
    if (o.mode == "sample") {
        std::mt19937_64 rng(o.seed);
        bool ok = true;
        for (std::uint64_t n = 0; n < o.samples; ++n) {
            Subspace t = random_subspace(plan->field(), o.v, 2, rng);
            auto counts = plan->lambda(t);
            BigCount sum = 0;
            std::cout << codes_of(t) << "\t";
            for (std::size_t i = 0; i < counts.size(); ++i) {
                std::cout << (i ? " " : "") << counts[i];
                sum += counts[i];
                if (counts[i] != expected) ok = false;
            }
            std::cout << "\texpected " << expected << " sum " << sum << "\n";
        }
        std::cout << (ok ? "all samples match\n" : "MISMATCH\n");
        return ok ? kOk : kFailed;
    }
    if (o.mode == "materialize") {
        const BigCount size = gaussian_binomial(o.v, o.k, plan->field()->q());
        if (size > 20000000) throw Error("[v,k]_q = " + size.str() + " subspaces is too many to materialize");
        LargeSet ls = to_large_set(plan->materialize());
        std::ofstream f;
        write_large_set(output(o, f), ls);
        return kOk;
    }
    throw CLI::ValidationError("--mode", "expected plan, materialize or sample");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdesign: subspace designs, large sets and halvings over finite fields"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "worker threads for verification (default: all cores)");

    auto add_qvk = [&](CLI::App* c, bool required) {
        auto* q = c->add_option("--q", o.q, "field order");
        auto* v = c->add_option("--v", o.v, "ambient dimension");
        auto* k = c->add_option("--k", o.k, "block dimension");
        if (required) {
            q->required();
            v->required();
            k->required();
        }
    };

    auto* binom = app.add_subcommand("binom", "Gaussian binomial coefficient [v,k]_q");
    add_qvk(binom, true);

    auto* en = app.add_subcommand("enumerate", "list the k-subspaces of GF(q)^v as row codes");
    add_qvk(en, true);
    en->add_option("--limit", o.limit, "stop after this many");
    en->add_flag("--paths", o.paths, "also print the grid path");

    auto* dec = app.add_subcommand("decompose", "decomposition of [v,k]_q into joins");
    add_qvk(dec, true);
    dec->add_option("--kind", o.kind, "pascal, vandermonde, avoid or cover")->required();
    dec->add_option("--u", o.u, "split dimension (vandermonde)");
    dec->add_option("--s", o.s, "offset (avoid, cover)");
    dec->add_flag("--verify", o.verify, "check disjointness and coverage by enumeration");

    auto* ver = app.add_subcommand("verify", "verify a design or large-set file");
    ver->add_option("file", o.file)->required();
    ver->add_option("--t", o.t, "override t");
    ver->add_option("--lambda", o.lambda, "override lambda");
    ver->add_flag("--json", o.json, "print a JSON line");

    auto* adm = app.add_subcommand("admissible", "divisibility conditions for LS_q[N](t,k,v)");
    add_qvk(adm, true);
    adm->add_option("--N", o.N, "number of parts")->required();
    adm->add_option("--t", o.t)->required();

    auto* tab = app.add_subcommand("tables", "reference tables for halvings");
    tab->add_option("table", o.table, "smallest-halvings or admissibility")->required();
    tab->add_option("--q", o.q, "restrict the admissibility table to one q");
    tab->add_option("--vmin", o.v_min);
    tab->add_option("--vmax", o.v_max);

    auto* tr = app.add_subcommand("transform", "dual, reduced, derived, residual or merged large set");
    tr->add_option("file", o.file)->required();
    tr->add_option("--kind", o.kind, "dual, reduced, derived, residual or merge")->required();
    tr->add_option("--d", o.d, "merge target (divides N)");
    tr->add_option("-o,--out", o.out, "output file (default stdout)");

    auto* km = app.add_subcommand("km", "prescribed-automorphism search");
    km->require_subcommand(1);
    auto km_common = [&](CLI::App* c) {
        c->add_option("--bundled", o.bundled, "q3 or q5: bundled polynomial, group and lambda");
        c->add_option("--q", o.q, "field order (prime)");
        c->add_option("--v", o.v, "dimension (degree of the polynomial)");
        c->add_option("--poly", o.poly, "primitive polynomial, leading coefficient first");
        c->add_option("--group", o.group, "generators as words in s and f, e.g. s^2,f^2");
        c->add_option("--t", o.t, "design strength (default 2)");
        c->add_option("--k", o.k, "block dimension (default 3)");
        c->add_option("--lambda", o.km_lambda, "design lambda");
        c->add_option("--budget", o.budget, "search node limit (0 = none)");
        c->add_option("--strategy", o.strategy, "backtrack or lattice (default: lattice for count and isotypes)");
    };
    auto* km_orb = km->add_subcommand("orbits", "orbit profile of the group");
    km_common(km_orb);
    km_orb->add_option("--dim", o.dim, "subspace dimension (default k)");
    km_orb->add_flag("--list", o.list, "list representatives");
    auto* km_mat = km->add_subcommand("matrix", "print the orbit incidence matrix");
    km_common(km_mat);
    auto* km_sol = km->add_subcommand("solve", "find a G-invariant design");
    km_common(km_sol);
    km_sol->add_flag("--all", o.all, "enumerate all solutions");
    km_sol->add_option("-o,--out", o.out, "write the design found");
    km_sol->add_option("--selection-out", o.selection, "write the orbit representatives found");
    auto* km_cnt = km->add_subcommand("count", "count G-invariant designs");
    km_common(km_cnt);
    auto* km_chk = km->add_subcommand("check-selection", "verify an orbit selection and its design");
    km_common(km_chk);
    km_chk->add_option("file", o.file, "one orbit representative per line (default: bundled selection)");
    km_chk->add_option("-o,--out", o.out, "write the resulting halving as a large set");
    auto* km_iso = km->add_subcommand("isotypes", "isomorphism types via overgroup infeasibility");
    km_common(km_iso);
    km_iso->add_option("--normalizer", o.normalizer, "word spec of the normalizer");
    km_iso->add_option("--overgroup", o.overgroups, "word spec of an overgroup (repeatable)");

    auto* rec = app.add_subcommand("recurse", "recursive halvings LS_q[N](2,k,v) from LS_q[N](2,3,6)");
    rec->add_option("--q", o.q);
    rec->add_option("--N", o.recurse_N, "number of parts of the base");
    rec->add_option("--k", o.k)->required();
    rec->add_option("--v", o.v)->required();
    rec->add_option("--base", o.base, "large-set file, or q3 / q5 for the bundled halvings")->required();
    rec->add_option("--mode", o.mode, "plan, materialize or sample");
    rec->add_option("--samples", o.samples);
    rec->add_option("--seed", o.seed);
    rec->add_option("-o,--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (o.threads == 0) o.threads = std::max(1u, std::thread::hardware_concurrency());

    try {
        if (binom->parsed()) return cmd_binom(o);
        if (en->parsed()) return cmd_enumerate(o);
        if (dec->parsed()) return cmd_decompose(o);
        if (ver->parsed()) return cmd_verify(o);
        if (adm->parsed()) return cmd_admissible(o);
        if (tab->parsed()) return cmd_tables(o);
        if (tr->parsed()) return cmd_transform(o);
        if (km_orb->parsed()) return km_orbits(o);
        if (km_mat->parsed()) return km_matrix(o);
        if (km_sol->parsed()) return km_solve_cmd(o, false);
        if (km_cnt->parsed()) return km_solve_cmd(o, true);
        if (km_chk->parsed()) return km_check_selection(o);
        if (km_iso->parsed()) return km_isotypes(o);
        if (rec->parsed()) return cmd_recurse(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
