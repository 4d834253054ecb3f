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

// Random (N, t)-partitioned families over GF(2) and an exhaustive (N, t) check,
// for exercising the Latin-square combination.

#ifndef QDESIGN_TESTS_FAMILIES_HPP
#define QDESIGN_TESTS_FAMILIES_HPP

#include <map>
#include <set>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qdesign/partition.hpp"

namespace families {

using namespace qdesign;

/// Subspace lattice of GF(q)^n, computed once per (q, n).
inline const std::vector<std::vector<Subspace>>& lattice(const FieldPtr& f, int n) {
    static std::map<std::pair<unsigned, int>, std::vector<std::vector<Subspace>>> cache;
    auto key = std::make_pair(f->q(), n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, oracle::lattice(f, n)).first;
    return it->second;
}

/// Empty result when the parts are pairwise disjoint and pairwise t-equivalent, else a reason.
inline std::string check_partitioned(const PartitionedFamily& fam, int t) {
    const auto& f = fam.field();
    std::vector<std::vector<Subspace>> parts;
    std::map<PackedKey, int> owner;
    for (std::size_t i = 0; i < fam.parts.size(); ++i) {
        parts.push_back(fam.parts[i].subspaces());
        for (const auto& b : parts.back()) {
            if (b.dim() != fam.k()) return "block of wrong dimension";
            if (!owner.emplace(pack(b), static_cast<int>(i)).second) return "parts overlap at " + b.to_string();
        }
    }
    if (t < 0) return {};
    if (static_cast<int>(parts.size()) != fam.N) return "expected N parts";
    if (t > fam.v()) return {};
    for (const auto& T : lattice(f, fam.v())[t]) {
        const auto first = oracle::count_containing(parts[0], T);
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (oracle::count_containing(parts[i], T) != first) {
                std::ostringstream ss;
                ss << "lambda differs at " << T.to_string() << ": part 0 has " << first << ", part " << i << " has "
                   << oracle::count_containing(parts[i], T);
                return ss.str();
            }
    }
    return {};
}

inline PartitionedFamily empty_family(const FieldPtr& f, int n, int k, int N, int t) {
    PartitionedFamily fam{N, t, {}};
    for (int i = 0; i < (t >= 0 ? N : 1); ++i) fam.parts.emplace_back(f, n, k);
    return fam;
}

/// A family of k-subspaces of GF(q)^n certified (N, t), t in {-1, 0, 1}.
/// t = 1 families are themselves Latin-square combinations of two (N, 0) families,
/// rechecked exhaustively before use.
template <class Rng>
PartitionedFamily random_family(const FieldPtr& f, int n, int k, int N, int t, Rng& rng) {
    const auto& all = lattice(f, n)[k];
    std::bernoulli_distribution coin(0.5);
    if (t < 0) {
        BlockSet b(f, n, k);
        for (const auto& s : all)
            if (coin(rng)) b.add(s);
        b.normalize();
        return {N, -1, {b}};
    }
    if (t == 0) {
        std::vector<Subspace> pool;
        for (const auto& s : all)
            if (coin(rng)) pool.push_back(s);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(pool.size() / N * N);
        auto fam = empty_family(f, n, k, N, 0);
        for (std::size_t i = 0; i < pool.size(); ++i) fam.parts[i % N].add(pool[i]);
        for (auto& p : fam.parts) p.normalize();
        return fam;
    }
    // t == 1: an ordinary join V_u with left (N,0) in [u, k1] and right (N,0) in [n-u, k-k1].
    std::vector<std::pair<int, int>> choices;
    for (int u = 0; u <= n; ++u)
        for (int k1 = 0; k1 <= std::min(u, k); ++k1)
            if (k - k1 <= n - u && lattice(f, u)[k1].size() >= static_cast<std::size_t>(N) &&
                lattice(f, n - u)[k - k1].size() >= static_cast<std::size_t>(N))
                choices.emplace_back(u, k1);
    if (choices.empty()) return empty_family(f, n, k, N, 1);
    auto [u, k1] = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    auto left = random_family(f, u, k1, N, 0, rng);
    auto right = random_family(f, n - u, k - k1, N, 0, rng);
    auto fam = combine(left, right, JoinSpec{JoinKind::Ordinary, n, u, u, k1, k - k1});
    fam.certified_t = 1;
    return fam;
}

struct Config {
    int N = 2, t1 = -1, t2 = -1;
    JoinSpec spec;
    bool empty_left = false, empty_right = false;

    std::string describe() const {
        std::ostringstream ss;
        ss << "N=" << N << " t1=" << t1 << " t2=" << t2 << " " << to_string(spec) << (empty_left ? " empty-left" : "")
           << (empty_right ? " empty-right" : "");
        return ss.str();
    }
};

/// Runs one configuration; empty string on success.
template <class Rng>
std::string run_config(const FieldPtr& f, const Config& c, Rng& rng, std::size_t* blocks = nullptr) {
    const auto& s = c.spec;
    auto left = c.empty_left ? empty_family(f, s.u1, s.k1, c.N, c.t1) : random_family(f, s.u1, s.k1, c.N, c.t1, rng);
    auto right = c.empty_right ? empty_family(f, s.v - s.u2, s.k2bar, c.N, c.t2)
                               : random_family(f, s.v - s.u2, s.k2bar, c.N, c.t2, rng);
    if (auto why = check_partitioned(left, c.t1); !why.empty()) return "left input: " + why;
    if (auto why = check_partitioned(right, c.t2); !why.empty()) return "right input: " + why;
    auto out = combine(left, right, s);
    const int want_t = (c.t1 < 0 && c.t2 < 0) ? -1 : c.t1 + c.t2 + 1;
    if (out.certified_t != want_t) return "certified t " + std::to_string(out.certified_t);
    // The union of the parts is the full set join.
    std::vector<Subspace> l = left.all().subspaces(), r;
    for (const auto& b : right.all().subspaces()) r.push_back(lift_from_quotient(b, s.u2));
    std::vector<Subspace> l_emb;
    for (const auto& b : l) l_emb.push_back(embed_into_chain(b, s.v));
    auto joined = set_join(l_emb, r, s);
    auto got = out.all().subspaces();
    if (blocks) *blocks = got.size();
    if (std::set<Subspace>(got.begin(), got.end()) != std::set<Subspace>(joined.begin(), joined.end()))
        return "parts do not cover the set join";
    return check_partitioned(out, want_t);
}

/// Every spec with v <= max_v, all t pairs and N, and the empty-input variants. With
/// `extremes_only`, k1 and k2bar take only their extreme values.
inline std::vector<Config> corner_configs(int max_v, bool extremes_only = true) {
    std::vector<Config> out;
    for (int v = 0; v <= max_v; ++v)
        for (JoinKind kind : {JoinKind::Ordinary, JoinKind::Covering, JoinKind::Avoiding})
            for (int u1 = 0; u1 <= v; ++u1)
                for (int u2 = u1; u2 <= v; ++u2) {
                    if (kind == JoinKind::Ordinary && u1 != u2) continue;
                    std::vector<int> k1s{0, u1}, k2s{0, v - u2};
                    if (!extremes_only) {
                        k1s.clear();
                        k2s.clear();
                        for (int i = 0; i <= u1; ++i) k1s.push_back(i);
                        for (int i = 0; i <= v - u2; ++i) k2s.push_back(i);
                    }
                    for (int k1 : k1s)
                        for (int k2bar : k2s)
                            for (int N : {2, 3})
                                for (int t1 : {-1, 0, 1})
                                    for (int t2 : {-1, 0, 1})
                                        for (int empty = 0; empty < 3; ++empty) {
                                            Config c{N, t1, t2, JoinSpec{kind, v, u1, u2, k1, k2bar}, empty == 1, empty == 2};
                                            out.push_back(c);
                                        }
                }
    return out;
}

/// Whether random_family(f, n, k, N, t) over GF(2) can come out nonempty.
inline bool can_fill(int n, int k, int N, int t) {
    if (k < 0 || k > n) return false;
    const BigCount size = oracle::qbinom(n, k, 2);
    if (t < 0) return size >= 2;
    if (t == 0) return size >= BigCount(2 * N);
    for (int u = 0; u <= n; ++u)
        for (int k1 = 0; k1 <= std::min(u, k); ++k1)
            if (can_fill(u, k1, N, 0) && can_fill(n - u, k - k1, N, 0)) return true;
    return false;
}

/// Random configuration over GF(2) with v in 2..6 whose inputs can be nonempty.
template <class Rng>
Config random_config(Rng& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    while (true) {
        Config c;
        c.N = pick(2, 3);
        c.t1 = pick(-1, 1);
        c.t2 = pick(-1, 1);
        const int v = pick(2, 6);
        const auto kind = static_cast<JoinKind>(pick(0, 2));
        int u1 = pick(0, v), u2 = kind == JoinKind::Ordinary ? u1 : pick(u1, v);
        c.spec = JoinSpec{kind, v, u1, u2, pick(0, u1), pick(0, v - u2)};
        if (can_fill(u1, c.spec.k1, c.N, c.t1) && can_fill(v - u2, c.spec.k2bar, c.N, c.t2)) return c;
    }
}

}  // namespace families

#endif  // QDESIGN_TESTS_FAMILIES_HPP
