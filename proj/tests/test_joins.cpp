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
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qdesign/joins.hpp"

using namespace qdesign;

namespace {

// The defining conditions, written out with generic sums and intersections.
bool member(const Subspace& k, const Subspace& k1, const Subspace& k2, const Subspace& u1, const Subspace& u2,
            JoinKind kind) {
    if (!(intersect(u1, k) == k1) || !(sum(u2, k) == k2)) return false;
    if (kind == JoinKind::Covering) return sum(u1, k) == sum(u2, k);
    if (kind == JoinKind::Avoiding) return intersect(u1, k) == intersect(u2, k);
    return true;
}

std::set<Subspace> as_set(const std::vector<Subspace>& v) { return {v.begin(), v.end()}; }

std::vector<std::pair<int, int>> vertices(const GridPath& p) {
    std::vector<std::pair<int, int>> out{{0, 0}};
    int x = 0, y = 0;
    for (const auto& s : p.steps) {
        (s.vertical ? y : x) += 1;
        out.emplace_back(x, y);
    }
    return out;
}

// Every valid spec in GF(2)^v together with all operand pairs.
template <class F>
void for_each_instance(const FieldPtr& f, int v, const std::vector<std::vector<Subspace>>& lat, F&& visit) {
    for (JoinKind kind : {JoinKind::Ordinary, JoinKind::Covering, JoinKind::Avoiding})
        for (int u1 = 0; u1 <= v; ++u1)
            for (int u2 = u1; u2 <= v; ++u2) {
                if (kind == JoinKind::Ordinary && u1 != u2) continue;
                const Subspace U1 = Subspace::chain(f, v, u1), U2 = Subspace::chain(f, v, u2);
                for (int k1 = 0; k1 <= u1; ++k1)
                    for (int k2bar = 0; k2bar <= v - u2; ++k2bar) {
                        JoinSpec spec{kind, v, u1, u2, k1, k2bar};
                        for (const auto& K1 : lat[k1]) {
                            if (!U1.contains(K1)) continue;
                            for (const auto& K2 : lat[u2 + k2bar])
                                if (K2.contains(U2)) visit(spec, K1, K2, U1, U2);
                        }
                    }
            }
}

}  // namespace

TEST_SUITE("joins") {
    TEST_CASE("small joins by hand") {
        auto f2 = GaloisField::make(2);
        auto V1 = Subspace::chain(f2, 3, 1);
        // K1 = U = K2 gives exactly one member.
        JoinSpec trivial{JoinKind::Ordinary, 3, 1, 1, 1, 0};
        auto one = join_enumerate(V1, V1, trivial);
        REQUIRE(one.size() == 1);
        CHECK(one[0] == V1);

        JoinSpec ord{JoinKind::Ordinary, 3, 1, 1, 0, 2};
        auto m = join_enumerate(Subspace::zero(f2, 3), Subspace::full(f2, 3), ord);
        CHECK(m.size() == 4);
        std::size_t brute = 0;
        for (const auto& k : grassmannian(f2, 3, 2))
            if (intersect(k, V1).dim() == 0 && sum(k, V1).dim() == 3) ++brute;
        CHECK(brute == 4);
        CHECK(join_size(ord, 2) == 4);

        JoinSpec cov{JoinKind::Covering, 4, 1, 2, 0, 0};
        auto c = join_enumerate(Subspace::zero(f2, 4), Subspace::chain(f2, 4, 2), cov);
        CHECK(c.size() == 2);
        CHECK(join_size(cov, 2) == 2);
        for (const auto& k : c) CHECK(k.dim() == 1);
    }

    TEST_CASE("join sizes") {
        auto f3 = GaloisField::make(3);
        JoinSpec ord{JoinKind::Ordinary, 6, 3, 3, 1, 2};
        CHECK(join_size(ord, 3) == 81);
        std::mt19937_64 rng(2);
        auto k1 = oracle::random_subspace_of(Subspace::chain(f3, 6, 3), 1, rng);
        auto k2 = oracle::random_superspace(Subspace::chain(f3, 6, 3), 5, rng);
        CHECK(join_enumerate(k1, k2, ord).size() == 81);
        CHECK(join_size(JoinSpec{JoinKind::Ordinary, 6, 3, 3, 3, 2}, 3) == 1);

        auto f5 = GaloisField::make(5);
        JoinSpec av{JoinKind::Avoiding, 4, 1, 2, 0, 1};
        CHECK(join_size(av, 5) == 25);
        auto a = join_enumerate(Subspace::zero(f5, 4), Subspace::span(MatGF::from_rows(f5, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), av);
        CHECK(a.size() == 25);
    }

    TEST_CASE("invalid specs and operands are rejected") {
        auto f2 = GaloisField::make(2);
        CHECK_THROWS_AS((JoinSpec{JoinKind::Ordinary, 4, 1, 2, 0, 0}.validate()), Error);
        CHECK_THROWS_AS((JoinSpec{JoinKind::Covering, 4, 2, 1, 0, 0}.validate()), Error);
        CHECK_THROWS_AS((JoinSpec{JoinKind::Ordinary, 4, 2, 2, 3, 0}.validate()), Error);
        JoinSpec ord{JoinKind::Ordinary, 4, 2, 2, 1, 1};
        // K1 not inside U.
        auto bad = Subspace::span(MatGF::from_rows(f2, {{1, 0, 0, 0}}));
        CHECK_THROWS_AS(join_enumerate(bad, Subspace::chain(f2, 4, 3), ord), Error);
    }

    TEST_CASE("enumeration equals the defining conditions, exhaustively over GF(2)^v, v <= 5") {
        auto f2 = GaloisField::make(2);
        for (int v = 0; v <= 5; ++v) {
            auto lat = oracle::lattice(f2, v);
            for_each_instance(f2, v, lat, [&](const JoinSpec& spec, const Subspace& K1, const Subspace& K2,
                                              const Subspace& U1, const Subspace& U2) {
                const auto got = join_enumerate(K1, K2, spec);
                std::set<Subspace> want;
                for (const auto& level : lat)
                    for (const auto& k : level)
                        if (member(k, K1, K2, U1, U2, spec.kind)) want.insert(k);
                CHECK(as_set(got) == want);
                CHECK(got.size() == want.size());
                CHECK(BigCount(got.size()) == join_size(spec, 2));
                for (const auto& k : got) {
                    CHECK(k.dim() == spec.k());
                    CHECK(join_member(k, K1, K2, spec));
                    CHECK(join_member(k, K1, K2, U1, U2, spec.kind));
                }
                // Same set as the equivalent ordinary join.
                CHECK(as_set(join_enumerate(K1, K2, as_ordinary(spec))) == want);
            });
        }
    }

    TEST_CASE("member paths pass through the join vertex") {
        auto f2 = GaloisField::make(2);
        const int v = 5;
        auto lat = oracle::lattice(f2, v);
        for_each_instance(f2, v, lat, [&](const JoinSpec& spec, const Subspace& K1, const Subspace& K2, const Subspace&,
                                          const Subspace&) {
            const auto ord = as_ordinary(spec);
            const std::pair<int, int> vertex{v - ord.u1 - ord.k2bar, ord.k2bar};
            for (const auto& k : join_enumerate(K1, K2, spec)) {
                auto vs = vertices(subspace_to_path(k));
                CHECK(std::find(vs.begin(), vs.end(), vertex) != vs.end());
            }
        });
    }

    TEST_CASE("dual of a covering join is an avoiding join") {
        auto f2 = GaloisField::make(2);
        const int v = 4;
        auto lat = oracle::lattice(f2, v);
        for_each_instance(f2, v, lat, [&](const JoinSpec& spec, const Subspace& K1, const Subspace& K2,
                                          const Subspace& U1, const Subspace& U2) {
            if (spec.kind != JoinKind::Covering) return;
            std::set<Subspace> duals;
            for (const auto& k : join_enumerate(K1, K2, spec)) duals.insert(dual(k));
            std::set<Subspace> want;
            for (const auto& level : lat)
                for (const auto& k : level)
                    if (member(k, dual(K2), dual(K1), dual(U2), dual(U1), JoinKind::Avoiding)) want.insert(k);
            CHECK(duals == want);
            // On the standard chain after reversing coordinates.
            JoinSpec av{JoinKind::Avoiding, v, v - spec.u2, v - spec.u1, v - K2.dim(), spec.u1 - spec.k1};
            std::set<Subspace> rev;
            for (const auto& k : duals) rev.insert(reverse_coordinates(k));
            CHECK(as_set(join_enumerate(reverse_coordinates(dual(K2)), reverse_coordinates(dual(K1)), av)) == rev);
        });
    }

    TEST_CASE("lambda of a join against brute force") {
        for (unsigned q : {2u, 3u}) {
            auto f = GaloisField::make(q);
            std::mt19937_64 rng(100 + q);
            const int v = q == 2 ? 5 : 4;
            auto lat = oracle::lattice(f, v);
            for (int trial = 0; trial < 60; ++trial) {
                const int u = trial % (v + 1);
                auto U = oracle::random_subspace(f, v, u, rng);
                auto K1 = oracle::random_subspace_of(U, trial % (u + 1), rng);
                auto K2 = oracle::random_superspace(U, u + trial % (v - u + 1), rng);
                std::vector<Subspace> members;
                for (const auto& level : lat)
                    for (const auto& k : level)
                        if (member(k, K1, K2, U, U, JoinKind::Ordinary)) members.push_back(k);
                for (const auto& level : lat)
                    for (const auto& t : level) {
                        CHECK(lambda_of_join(t, K1, K2, U) == oracle::count_containing(members, t));
                    }
                CHECK(lambda_of_join(Subspace::zero(f, v), K1, K2, U) == BigCount(members.size()));
            }
        }
    }

    TEST_CASE("set joins") {
        auto f2 = GaloisField::make(2);
        JoinSpec spec{JoinKind::Avoiding, 5, 2, 3, 1, 1};
        std::vector<Subspace> left, right;
        for (const auto& k : grassmannian(f2, 5, 1))
            if (Subspace::chain(f2, 5, 2).contains(k)) left.push_back(k);
        for (const auto& k : grassmannian(f2, 5, 4))
            if (k.contains(Subspace::chain(f2, 5, 3))) right.push_back(k);
        CHECK(set_join({}, right, spec).empty());
        CHECK(set_join(left, {}, spec).empty());
        CHECK(set_join({left[0]}, {right[0]}, spec) == join_enumerate(left[0], right[0], spec));

        // Cells of distinct pairs are disjoint.
        std::size_t total = 0;
        for (const auto& a : left)
            for (const auto& b : right) total += join_enumerate(a, b, spec).size();
        auto all = set_join(left, right, spec);
        CHECK(all.size() == total);
        CHECK(std::is_sorted(all.begin(), all.end()));

        // Monotone in both arguments.
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Subspace> l1, l2, r1, r2;
            for (const auto& a : left) {
                const unsigned r = rng() % 3;
                if (r >= 1) l2.push_back(a);
                if (r == 2) l1.push_back(a);
            }
            for (const auto& b : right) {
                const unsigned r = rng() % 3;
                if (r >= 1) r2.push_back(b);
                if (r == 2) r1.push_back(b);
            }
            auto small = as_set(set_join(l1, r1, spec));
            auto big = as_set(set_join(l2, r2, spec));
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
        // A point outside V_2 is not a valid left operand.
        CHECK_THROWS_AS(set_join({grassmannian(f2, 5, 1).front()}, right, spec), Error);
    }
}
