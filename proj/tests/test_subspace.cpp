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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qdesign/grassmann.hpp"

using namespace qdesign;

namespace {

Subspace rows(const FieldPtr& f, const std::vector<std::vector<unsigned>>& r) {
    return Subspace::span(MatGF::from_rows(f, r));
}

std::size_t brute_size(const Subspace& s) {
    std::size_t n = 0;
    for (const auto& x : oracle::vectors(s.field()->q(), s.v()))
        if (s.contains_vector(x.data())) ++n;
    return n;
}

}  // namespace

TEST_SUITE("subspace") {
    TEST_CASE("canonical form examples") {
        auto f5 = GaloisField::make(5);
        auto s = rows(f5, {{1, 0, 0, 3, 4, 1}, {0, 1, 0, 4, 0, 3}, {0, 0, 1, 1, 1, 0}});
        CHECK(s.dim() == 3);
        CHECK(s.pivots() == std::vector<int>{0, 1, 2});
        CHECK(s.matrix() == MatGF::from_rows(f5, {{1, 0, 0, 3, 4, 1}, {0, 1, 0, 4, 0, 3}, {0, 0, 1, 1, 1, 0}}));

        auto f2 = GaloisField::make(2);
        auto z = rows(f2, {{0, 0, 0}});
        CHECK(z.dim() == 0);
        CHECK(z == Subspace::zero(f2, 3));

        auto f3 = GaloisField::make(3);
        auto l = rows(f3, {{1, 1, 0}, {2, 2, 0}});
        CHECK(l.dim() == 1);
        CHECK(l.matrix() == MatGF::from_rows(f3, {{1, 1, 0}}));
        CHECK(rows(f3, {{2, 2, 0}}) == l);
    }

    TEST_CASE("from_canonical rejects non-canonical input") {
        auto f3 = GaloisField::make(3);
        CHECK_THROWS_AS(Subspace::from_canonical(f3, 3, 1, {2, 1, 0}), Error);
        CHECK_THROWS_AS(Subspace::from_canonical(f3, 3, 2, {1, 1, 0, 0, 1, 0}), Error);
        CHECK_NOTHROW(Subspace::from_canonical(f3, 3, 2, {1, 0, 2, 0, 1, 1}));
    }

    TEST_CASE("canonicalization is idempotent and order preserving") {
        for (unsigned q : {2u, 3u}) {
            auto f = GaloisField::make(q);
            for (int v = 1; v <= (q == 2 ? 5 : 4); ++v) {
                auto lat = oracle::lattice(f, v);
                for (const auto& level : lat)
                    for (const auto& s : level) {
                        CHECK(Subspace::span(s.matrix()) == s);
                        for (int r = 0; r < s.dim(); ++r) CHECK(s.at(r, s.pivots()[r]) == 1);
                    }
                if (v > 4) continue;
                for (int a = 0; a <= v; ++a)
                    for (int b = a; b <= v; ++b)
                        for (const auto& u : lat[a])
                            for (const auto& w : lat[b]) {
                                if (!w.contains(u)) continue;
                                const auto& pu = u.pivots();
                                const auto& pw = w.pivots();
                                CHECK(std::includes(pw.begin(), pw.end(), pu.begin(), pu.end()));
                            }
            }
        }
    }

    TEST_CASE("sum and intersection") {
        auto f2 = GaloisField::make(2);
        auto e1 = rows(f2, {{1, 0, 0}});
        auto e2 = rows(f2, {{0, 1, 0}});
        CHECK(sum(e1, e2).dim() == 2);
        CHECK(intersect(e1, e2).dim() == 0);
        CHECK(sum(e1, e1) == e1);
        CHECK(intersect(e1, e1) == e1);
        CHECK_THROWS_AS(sum(e1, Subspace::zero(f2, 4)), Error);

        auto f3 = GaloisField::make(3);
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            auto a = oracle::random_subspace(f3, 5, 3, rng);
            auto b = oracle::random_subspace(f3, 5, 3, rng);
            auto s = sum(a, b), i = intersect(a, b);
            CHECK(a.dim() + b.dim() == s.dim() + i.dim());
            // Point counts of the brute-force vector sets.
            std::size_t common = 0;
            for (const auto& x : oracle::vectors(3, 5))
                if (a.contains_vector(x.data()) && b.contains_vector(x.data())) ++common;
            CHECK(common == brute_size(i));
            CHECK(s.contains(a));
            CHECK(s.contains(b));
        }
    }

    TEST_CASE("modular law") {
        auto f3 = GaloisField::make(3);
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            auto c = oracle::random_subspace(f3, 5, 1 + trial % 4, rng);
            auto a = oracle::random_subspace_of(c, trial % (c.dim() + 1), rng);
            auto b = oracle::random_subspace(f3, 5, trial % 5, rng);
            CHECK(sum(a, intersect(b, c)) == intersect(sum(a, b), c));
        }
    }

    TEST_CASE("dual") {
        auto f2 = GaloisField::make(2);
        CHECK(dual(Subspace::zero(f2, 4)) == Subspace::full(f2, 4));
        CHECK(dual(rows(f2, {{1, 1, 0}})) == rows(f2, {{1, 1, 0}, {0, 0, 1}}));
        for (unsigned q : {2u, 3u}) {
            auto f = GaloisField::make(q);
            auto lat = oracle::lattice(f, 4);
            for (const auto& level : lat)
                for (const auto& s : level) {
                    const Subspace d = dual(s);
                    CHECK(d == dual_by_kernel(s));
                    CHECK(d.dim() + s.dim() == 4);
                    CHECK(dual(d) == s);
                    for (int i = 0; i < s.dim(); ++i)
                        for (int j = 0; j < d.dim(); ++j) {
                            unsigned dot = 0;
                            for (int c = 0; c < 4; ++c) dot = f->add(dot, f->mul(s.at(i, c), d.at(j, c)));
                            CHECK(dot == 0);
                        }
                }
        }
    }

    TEST_CASE("chain meet and join match the generic operations") {
        auto f3 = GaloisField::make(3);
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            auto u = oracle::random_subspace(f3, 6, trial % 7, rng);
            for (int i = 0; i <= 6; ++i) {
                auto vi = Subspace::chain(f3, 6, i);
                CHECK(meet_with_chain(u, i) == intersect(u, vi));
                CHECK(join_with_chain(u, i) == sum(u, vi));
            }
            CHECK(meet_with_chain(u, 0).dim() == 0);
            CHECK(join_with_chain(u, 0) == u);
            CHECK(meet_with_chain(u, 6) == u);
            CHECK(join_with_chain(u, 6) == Subspace::full(f3, 6));
        }
        auto u = decode_block(f3, 6, {243 + 9, 81 + 1, 27 + 2});
        CHECK(meet_with_chain(u, 3) == intersect(u, Subspace::chain(f3, 6, 3)));
        CHECK(join_with_chain(u, 3) == sum(u, Subspace::chain(f3, 6, 3)));
    }

    TEST_CASE("cover and avoid") {
        auto f2 = GaloisField::make(2);
        auto v2 = Subspace::chain(f2, 4, 2);
        CHECK(covers(v2, StandardFlag{1, 2}));
        CHECK_FALSE(avoids(v2, StandardFlag{1, 2}));
        CHECK(covers(v2, Subspace::chain(f2, 4, 1), v2));
        CHECK_FALSE(avoids(v2, Subspace::chain(f2, 4, 1), v2));
        CHECK_THROWS_AS(covers(v2, v2, Subspace::chain(f2, 4, 1)), Error);

        for (unsigned q : {2u, 3u}) {
            auto f = GaloisField::make(q);
            for (int v = 1; v <= (q == 2 ? 5 : 4); ++v) {
                auto lat = oracle::lattice(f, v);
                for (const auto& level : lat)
                    for (const auto& k : level)
                        for (int i = 0; i <= v; ++i)
                            for (int j = i; j <= v; ++j) {
                                auto ui = Subspace::chain(f, v, i), uj = Subspace::chain(f, v, j);
                                const bool c = sum(ui, k) == sum(uj, k);
                                const bool a = intersect(ui, k) == intersect(uj, k);
                                CHECK(covers(k, StandardFlag{i, j}) == c);
                                CHECK(avoids(k, StandardFlag{i, j}) == a);
                                CHECK(covers(k, ui, uj) == c);
                                CHECK(avoids(k, ui, uj) == a);
                                if (i == j) CHECK((c && a));
                            }
            }
        }
    }

    TEST_CASE("cover/avoid duality") {
        auto f2 = GaloisField::make(2);
        auto lat = oracle::lattice(f2, 4);
        std::vector<Subspace> all;
        for (const auto& level : lat) all.insert(all.end(), level.begin(), level.end());
        for (const auto& u1 : all)
            for (const auto& u2 : all) {
                if (!u2.contains(u1)) continue;
                for (const auto& k : all) CHECK(covers(k, u1, u2) == avoids(dual(k), dual(u2), dual(u1)));
            }
    }

    TEST_CASE("quotient and restriction coordinates round-trip") {
        auto f3 = GaloisField::make(3);
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 100; ++trial) {
            const int i = trial % 7;
            auto inside = oracle::random_subspace_of(Subspace::chain(f3, 6, i), trial % (i + 1), rng);
            CHECK(embed_into_chain(restrict_to_chain(inside, i), 6) == inside);
            auto above = oracle::random_superspace(Subspace::chain(f3, 6, i), i + trial % (7 - i), rng);
            CHECK(lift_from_quotient(quotient_by_chain(above, i), i) == above);
        }
    }
}
