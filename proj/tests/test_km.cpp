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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qdesign/bundled.hpp"
#include "qdesign/grassmann.hpp"
#include "qdesign/km.hpp"

using namespace qdesign;

namespace {

const ProjectiveGroup& q3_group() {
    static const ProjectiveGroup g(bundled_instance("q3").generators(bundled_instance("q3").group));
    return g;
}

const KMInstance& q3_instance() {
    static const KMInstance inst(q3_group(), 2, 3, 20);
    return inst;
}

// Burnside: average number of d-subspaces fixed by a group element.
std::uint64_t burnside_orbits(const ProjectiveGroup& g, int d) {
    const auto subs = grassmannian(g.field(), g.v(), d);
    std::uint64_t fixed = 0;
    for (const auto& m : g.elements())
        for (const auto& s : subs) {
            MatGF img = s.matrix() * m;
            if (Subspace::span(img) == s) ++fixed;
        }
    return fixed / g.order();
}

// All 0/1 solutions of A x = b by exhaustion.
std::vector<std::vector<std::size_t>> brute_solutions(const ExactSystem& sys) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << sys.cols); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < sys.rows && ok; ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < sys.cols; ++j)
                if (mask >> j & 1) s += sys.a[i * sys.cols + j];
            ok = s == sys.b[i];
        }
        if (!ok) continue;
        std::vector<std::size_t> sel;
        for (std::size_t j = 0; j < sys.cols; ++j)
            if (mask >> j & 1) sel.push_back(j);
        out.push_back(sel);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("km") {
    TEST_CASE("prescribed group orders") {
        CHECK(q3_group().order() == 546);
        const auto& q5 = bundled_instance("q5");
        CHECK(ProjectiveGroup(q5.generators(q5.group)).order() == 11718);

        auto f3 = GaloisField::make(3);
        CHECK(ProjectiveGroup({MatGF::identity(f3, 4)}).order() == 1);
        // Scalars are trivial in PGL.
        auto two = MatGF::identity(f3, 4);
        for (int i = 0; i < 4; ++i) two.set(i, i, 2);
        CHECK(ProjectiveGroup({two}).order() == 1);
        CHECK_THROWS_AS(ProjectiveGroup({MatGF(f3, 4, 4)}), Error);
        CHECK_THROWS_AS(ProjectiveGroup({MatGF::identity(f3, 4), MatGF::identity(f3, 3)}), Error);
        CHECK_THROWS_AS(ProjectiveGroup(std::vector<MatGF>{}), Error);

        for (const auto& g : q3_group().elements()) CHECK(q3_group().contains(g * q3_group().generators()[0]));
    }

    TEST_CASE("word specs") {
        const auto& b = bundled_instance("q3");
        auto poly = b.primitive_polynomial();
        auto s = singer_matrix(poly), f = frobenius_matrix(poly);
        auto gens = parse_word_spec("s^2,sf,f^2", s, f);
        REQUIRE(gens.size() == 3);
        CHECK(gens[0] == s * s);
        CHECK(gens[1] == s * f);
        CHECK(gens[2] == f * f);
        CHECK(parse_word_spec("s^13", s, f)[0] == s.pow(13));
        CHECK_THROWS_AS(parse_word_spec("", s, f), Error);
        CHECK_THROWS_AS(parse_word_spec("s,,f", s, f), Error);
        CHECK_THROWS_AS(parse_word_spec("s^", s, f), Error);
        CHECK_THROWS_AS(parse_word_spec("x", s, f), Error);
        // The four overgroups have the expected orders.
        std::map<std::string, std::uint64_t> want{{"s,f^2", 1092}, {"s^2,f", 1092}, {"s^2,sf,f^2", 1092}, {"s,f", 2184}};
        for (const auto& [w, o] : want) CHECK(ProjectiveGroup(parse_word_spec(w, s, f)).order() == o);
    }

    TEST_CASE("orbit tables") {
        OrbitTable t2(q3_group(), 2), t3(q3_group(), 3);
        CHECK(t3.count() == 76);
        CHECK(t3.profile_string() == "14^2 182^18 546^56");
        CHECK(t2.count() == 25);
        CHECK(t2.count() == burnside_orbits(q3_group(), 2));
        std::uint64_t total = 0;
        for (std::size_t j = 0; j < t3.count(); ++j) {
            CHECK(546 % t3.size(j) == 0);
            CHECK(t3.orbit_of(t3.representative(j)) == j);
            total += t3.size(j);
        }
        CHECK(BigCount(total) == oracle::qbinom(6, 3, 3));

        // Orbits are closed under the generators.
        std::mt19937_64 rng(3);
        for (int i = 0; i < 200; ++i) {
            auto s = oracle::random_subspace(q3_group().field(), 6, 3, rng);
            for (const auto& g : q3_group().generators()) CHECK(t3.orbit_of(act(s, g)) == t3.orbit_of(s));
        }

        auto f2 = GaloisField::make(2);
        OrbitTable triv(ProjectiveGroup({MatGF::identity(f2, 4)}), 2);
        CHECK(triv.count() == 35);
        CHECK(triv.profile_string() == "1^35");
    }

    TEST_CASE("orbit incidence matrix") {
        const auto& inst = q3_instance();
        REQUIRE(inst.rows() == 25);
        REQUIRE(inst.cols() == 76);
        for (std::size_t i = 0; i < inst.rows(); ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < inst.cols(); ++j) s += inst.a(i, j);
            CHECK(s == 40);  // [4,1]_3
        }
        // Double counting of flags T < K inside each k-orbit.
        for (std::size_t j = 0; j < inst.cols(); ++j) {
            BigCount flags = 0;
            for (std::size_t i = 0; i < inst.rows(); ++i) flags += BigCount(inst.a(i, j)) * inst.t_orbits().size(i);
            CHECK(flags == BigCount(inst.k_orbits().size(j)) * oracle::qbinom(3, 2, 3));
        }
        // Spot-check entries against direct counts.
        const auto& to = inst.t_orbits();
        const auto& ko = inst.k_orbits();
        std::vector<std::vector<Subspace>> korb(ko.count());
        for (const auto& k : grassmannian(inst.k_orbits().field(), 6, 3)) korb[ko.orbit_of(k)].push_back(k);
        for (std::size_t i = 0; i < inst.rows(); i += 6)
            for (std::size_t j = 0; j < inst.cols(); j += 5) {
                std::uint32_t c = 0;
                for (const auto& k : korb[j]) c += k.contains(to.representative(i));
                CHECK(c == inst.a(i, j));
            }
    }

    TEST_CASE("q = 5 row sums") {
        const auto& b = bundled_instance("q5");
        KMInstance inst(ProjectiveGroup(b.generators(b.group)), 2, 3, 78);
        CHECK(inst.cols() == 248);
        for (std::size_t i = 0; i < inst.rows(); ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < inst.cols(); ++j) s += inst.a(i, j);
            CHECK(s == 156);  // [4,1]_5
        }
    }

    TEST_CASE("solvers agree with exhaustion on small systems") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 60; ++trial) {
            ExactSystem sys;
            sys.rows = 3 + trial % 4;
            sys.cols = 6 + trial % 7;
            for (std::size_t i = 0; i < sys.rows * sys.cols; ++i) sys.a.push_back(rng() % 4);
            std::vector<int> x(sys.cols);
            for (auto& xi : x) xi = rng() % 2;
            for (std::size_t i = 0; i < sys.rows; ++i) {
                std::uint64_t s = 0;
                for (std::size_t j = 0; j < sys.cols; ++j) s += sys.a[i * sys.cols + j] * x[j];
                sys.b.push_back(trial % 5 == 4 ? s + 1 : s);
            }
            auto want = brute_solutions(sys);
            for (auto strat : {SolverStrategy::Backtrack, SolverStrategy::Lattice}) {
                CAPTURE(to_string(strat));
                CAPTURE(trial);
                sys.strategy = strat;
                auto all = solve_exact(sys, SolveMode::Enumerate);
                CHECK(all.solutions == want);
                CHECK(solve_exact(sys, SolveMode::Count).count == want.size());
                auto first = solve_exact(sys, SolveMode::First);
                CHECK(first.solutions.size() == std::min<std::size_t>(1, want.size()));
                if (!first.solutions.empty())
                    CHECK(std::find(want.begin(), want.end(), first.solutions[0]) != want.end());
            }
        }
    }

    TEST_CASE("budgets and early stops") {
        const auto& inst = q3_instance();
        auto r = km_solve(inst, SolveMode::Count, 50);
        CHECK(r.exhausted);
        int seen = 0;
        auto stop = km_solve(inst, SolveMode::Enumerate, 0, [&](const std::vector<std::size_t>&) { return ++seen < 3; },
                             SolverStrategy::Lattice);
        CHECK(seen == 3);
        CHECK_FALSE(stop.exhausted);
        CHECK_THROWS_AS(parse_solver_strategy("simplex"), Error);
        CHECK(parse_solver_strategy("lattice") == SolverStrategy::Lattice);
    }

    TEST_CASE("selections") {
        auto inst = q3_instance();
        std::vector<std::size_t> all(inst.cols());
        for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
        inst.set_lambda(40);
        CHECK(verify_selection(inst, all).ok);
        inst.set_lambda(0);
        CHECK(verify_selection(inst, {}).ok);
        inst.set_lambda(20);
        auto bad = verify_selection(inst, {0});
        CHECK_FALSE(bad.ok);
        CHECK(bad.failing_row.has_value());
        CHECK_THROWS_AS(verify_selection(inst, {0, 0}), Error);
        CHECK_THROWS_AS(verify_selection(inst, {inst.cols()}), Error);

        // A solver solution gives a design closed under G; its representatives round-trip as codes.
        auto first = km_solve(inst, SolveMode::First, 0, {}, SolverStrategy::Lattice);
        REQUIRE(first.solutions.size() == 1);
        std::vector<std::vector<std::uint64_t>> codes;
        for (auto j : first.solutions[0]) codes.push_back(encode_block(inst.k_orbits().representative(j)));
        auto sel = selection_from_codes(inst, codes);
        CHECK(sel == first.solutions[0]);
        auto rep = verify_selection(inst, sel);
        CHECK(rep.ok);
        CHECK(rep.blocks == 16940);
        auto d = assemble_design(inst, sel);
        CHECK(d.blocks.size() == 16940);
        CHECK(verify_design(d).ok);
        for (const auto& g : q3_group().generators())
            for (std::size_t i = 0; i < d.blocks.size(); i += 97) CHECK(d.blocks.contains(act(d.blocks.at(i), g)));
    }

    TEST_CASE("code line parsing") {
        auto codes = parse_code_lines("# header\n(252, 82, 29)\n243 81 27  # trailing\n\n1,2,3\n");
        REQUIRE(codes.size() == 3);
        CHECK(codes[0] == std::vector<std::uint64_t>{252, 82, 29});
        CHECK(codes[2] == std::vector<std::uint64_t>{1, 2, 3});
        CHECK_THROWS_WITH_AS(parse_code_lines("1 2 3\n4 x 5\n"), doctest::Contains("line 2"), Error);

        const auto& inst = q3_instance();
        CHECK_THROWS_AS(selection_from_codes(inst, {{252, 82}}), Error);
        CHECK_THROWS_AS(selection_from_codes(inst, {{1, 1, 1}}), Error);
    }
}
