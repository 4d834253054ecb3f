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
#include "qdesign/grassmann.hpp"

using namespace qdesign;

namespace {

std::vector<std::pair<int, int>> vertices(const GridPath& p) {
    std::vector<std::pair<int, int>> out{{0, 0}};
    int x = 0, y = 0;
    for (const auto& s : p.steps) {
        if (s.vertical)
            ++y;
        else
            ++x;
        out.emplace_back(x, y);
    }
    return out;
}

std::vector<Element> digits(std::uint64_t code, unsigned q, int v) {
    std::vector<Element> out(v);
    for (int j = v - 1; j >= 0; --j, code /= q) out[j] = static_cast<Element>(code % q);
    return out;
}

}  // namespace

TEST_SUITE("grassmann") {
    TEST_CASE("Gaussian binomial") {
        CHECK(gaussian_binomial(6, 3, 5) == 2558556);
        CHECK(gaussian_binomial(6, 3, 3) == 33880);
        CHECK(gaussian_binomial(7, 0, 4) == 1);
        CHECK(gaussian_binomial(5, 6, 2) == 0);
        CHECK(gaussian_binomial(5, -1, 2) == 0);
        for (unsigned q : {2u, 3u, 4u, 5u, 7u})
            for (int v = 0; v <= 14; ++v)
                for (int k = 0; k <= v; ++k) {
                    CAPTURE(q);
                    CAPTURE(v);
                    CAPTURE(k);
                    CHECK(gaussian_binomial(v, k, q) == oracle::qbinom(v, k, q));
                    CHECK(gaussian_binomial(v, k, q) == gaussian_binomial(v, v - k, q));
                }
        CHECK(gaussian_binomial_u64(10, 5, 3) == oracle::qbinom(10, 5, 3).convert_to<std::uint64_t>());
        CHECK_THROWS_AS(gaussian_binomial_u64(40, 20, 5), Error);
    }

    TEST_CASE("enumeration counts and order") {
        auto f2 = GaloisField::make(2);
        CHECK(grassmannian(f2, 3, 1).size() == 7);
        auto zero = grassmannian(f2, 4, 0);
        REQUIRE(zero.size() == 1);
        CHECK(zero[0] == Subspace::zero(f2, 4));
        auto g = grassmannian(f2, 4, 2);
        CHECK(encode_block(g.front()) == std::vector<std::uint64_t>{8, 4});

        auto f3 = GaloisField::make(3);
        std::set<std::vector<std::uint64_t>> seen;
        std::uint64_t n = 0;
        for_each_subspace(f3, 6, 3, [&](const Subspace& s) {
            ++n;
            seen.insert(encode_block(s));
            return true;
        });
        CHECK(n == 33880);
        CHECK(seen.size() == 33880);

        // Early stop.
        n = 0;
        for_each_subspace(f3, 6, 3, [&](const Subspace&) { return ++n < 10; });
        CHECK(n == 10);
    }

    TEST_CASE("enumeration agrees with the span lattice") {
        for (unsigned q : {2u, 3u}) {
            auto f = GaloisField::make(q);
            for (int v = 0; v <= (q == 2 ? 5 : 4); ++v) {
                auto lat = oracle::lattice(f, v);
                for (int k = 0; k <= v; ++k) {
                    auto g = grassmannian(f, v, k);
                    std::set<Subspace> got(g.begin(), g.end());
                    CHECK(got.size() == g.size());
                    CHECK(got == std::set<Subspace>(lat[k].begin(), lat[k].end()));
                }
            }
        }
    }

    TEST_CASE("grid paths") {
        auto f3 = GaloisField::make(3);
        GridPath flat;
        flat.steps.assign(5, PathStep{false, {}});
        CHECK(path_to_subspace(f3, flat) == Subspace::zero(f3, 5));
        GridPath up;
        up.steps.assign(4, PathStep{true, {}});
        CHECK(path_to_subspace(f3, up) == Subspace::full(f3, 4));
        CHECK(path_to_subspace(f3, up).matrix() == MatGF::identity(f3, 4));

        GridPath bad;
        bad.steps = {PathStep{true, {}}, PathStep{false, {1, 1}}};
        CHECK_THROWS_AS(path_to_subspace(f3, bad), Error);

        for (unsigned q : {2u, 3u})
            for (int v = 0; v <= 5; ++v)
                for (int k = 0; k <= v; ++k) {
                    auto f = GaloisField::make(q);
                    for_each_subspace(f, v, k, [&](const Subspace& s) {
                        const GridPath p = subspace_to_path(s);
                        CHECK(p.height() == k);
                        CHECK(path_to_subspace(f, p) == s);
                        int y = 0;
                        for (int j = 0; j < v; ++j) {
                            const auto& st = p.steps[j];
                            const bool pivot = std::count(s.pivots().begin(), s.pivots().end(), j) > 0;
                            CHECK(st.vertical == pivot);
                            // Vertical at column j exactly when U covers V_{v-j} / V_{v-j-1}.
                            CHECK(st.vertical == covers(s, StandardFlag{v - j - 1, v - j}));
                            if (!st.vertical) CHECK(static_cast<int>(st.label.size()) == y);
                            y += st.vertical;
                        }
                        return true;
                    });
                }
    }

    TEST_CASE("path of the reversed dual is the reflected path") {
        auto f2 = GaloisField::make(2);
        for (int v = 0; v <= 4; ++v)
            for (int k = 0; k <= v; ++k)
                for (const auto& u : grassmannian(f2, v, k)) {
                    auto a = vertices(subspace_to_path(reverse_coordinates(dual(u))));
                    std::vector<std::pair<int, int>> b;
                    for (auto [x, y] : vertices(subspace_to_path(u))) b.emplace_back(k - y, v - k - x);
                    std::sort(a.begin(), a.end());
                    std::sort(b.begin(), b.end());
                    CHECK(a == b);
                }
    }

    TEST_CASE("q-adic codec") {
        auto f5 = GaloisField::make(5);
        auto s = decode_block(f5, 6, {3221, 728, 155});
        CHECK(s.matrix() == MatGF::from_rows(f5, {{1, 0, 0, 3, 4, 1}, {0, 1, 0, 4, 0, 3}, {0, 0, 1, 1, 1, 0}}));
        CHECK(s.pivots() == std::vector<int>{0, 1, 2});
        auto r = decode_block(f5, 6, {5629, 146, 38});
        CHECK(r.matrix() == MatGF::from_rows(f5, {{1, 4, 0, 0, 0, 4}, {0, 0, 1, 0, 4, 1}, {0, 0, 0, 1, 2, 3}}));
        CHECK(r.pivots() == std::vector<int>{0, 2, 3});
        CHECK(encode_block(Subspace::zero(f5, 6)).empty());
        CHECK(decode_block(f5, 6, {}) == Subspace::zero(f5, 6));

        // Hand expansion of the codes.
        for (std::uint64_t c : {3221ull, 728ull, 155ull, 5629ull, 146ull, 38ull}) {
            auto d = digits(c, 5, 6);
            std::vector<Element> row(6);
            decode_row(c, 6, 5, row.data());
            CHECK(row == d);
            CHECK(encode_row(d.data(), 6, 5) == c);
        }

        try {
            decode_block(f5, 6, {3221, 3221 + 1, 155});
            FAIL("accepted a non-canonical block");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("row") != std::string::npos);
        }
        CHECK_THROWS_AS(decode_block(f5, 6, {15625}), Error);

        for (unsigned q : {2u, 3u})
            for (int v = 0; v <= 5; ++v)
                for (int k = 0; k <= v; ++k) {
                    auto f = GaloisField::make(q);
                    for_each_subspace(f, v, k, [&](const Subspace& x) {
                        CHECK(decode_block(f, v, encode_block(x)) == x);
                        CHECK(unpack(f, v, k, pack(x)) == x);
                        return true;
                    });
                }
    }

    TEST_CASE("packed key order is code-tuple order") {
        auto f3 = GaloisField::make(3);
        auto g = grassmannian(f3, 5, 2);
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int i = 0; i < 2000; ++i) {
            const auto& a = g[pick(rng)];
            const auto& b = g[pick(rng)];
            CHECK((pack(a) < pack(b)) == (encode_block(a) < encode_block(b)));
        }
    }

    TEST_CASE("subspace index") {
        auto f3 = GaloisField::make(3);
        SubspaceIndex idx(f3, 5, 2);
        CHECK(idx.size() == 1210);
        for (std::size_t i = 0; i < idx.size(); i += 37) CHECK(idx.find(idx.subspace_at(i)) == static_cast<std::int64_t>(i));
        CHECK(std::is_sorted(idx.keys().begin(), idx.keys().end()));
    }

    TEST_CASE("coefficient patterns enumerate the t-subspaces of a block") {
        for (unsigned q : {2u, 3u}) {
            auto f = GaloisField::make(q);
            std::mt19937_64 rng(q);
            for (int trial = 0; trial < 20; ++trial) {
                auto b = oracle::random_subspace(f, 6, 3, rng);
                for (int t = 1; t <= 3; ++t) {
                    auto pats = coefficient_patterns(*f, 3, t);
                    std::set<Subspace> got;
                    std::vector<Element> out(static_cast<std::size_t>(t) * 6);
                    for (std::size_t p = 0; p < pats.size(); p += static_cast<std::size_t>(t) * 3) {
                        combine_rows(*f, pats.data() + p, t, 3, b.entries().data(), 6, out.data());
                        got.insert(Subspace::from_canonical(f, 6, t, out));
                    }
                    std::set<Subspace> want;
                    for (const auto& x : grassmannian(f, 6, t))
                        if (b.contains(x)) want.insert(x);
                    CHECK(got == want);
                }
            }
        }
    }
}
