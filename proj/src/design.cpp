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

#include "qdesign/design.hpp"

#include <algorithm>
#include <thread>

namespace qdesign {

namespace {

unsigned resolve_threads(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

std::string subspace_params(const BlockSet& b) {
    return "[" + std::to_string(b.v()) + "," + std::to_string(b.k()) + "]_" + std::to_string(b.field()->q());
}

}  // namespace

// ---------------------------------------------------------------------------
// BlockSet

BlockSet::BlockSet(FieldPtr field, int v, int k) : field_(std::move(field)), v_(v), k_(k) {
    if (!packable(v, k, field_->q())) throw Error("block keys for " + subspace_params(*this) + " exceed 128 bits");
}

BlockSet::BlockSet(FieldPtr field, int v, int k, std::vector<PackedKey> keys) : BlockSet(std::move(field), v, k) {
    keys_ = std::move(keys);
    normalize();
}

BlockSet BlockSet::grassmannian(FieldPtr field, int v, int k) {
    SubspaceIndex index(field, v, k);
    BlockSet b(std::move(field), v, k);
    b.keys_ = index.keys();
    return b;
}

std::vector<Subspace> BlockSet::subspaces() const {
    std::vector<Subspace> out;
    out.reserve(keys_.size());
    for (auto key : keys_) out.push_back(unpack(field_, v_, k_, key));
    return out;
}

bool BlockSet::contains(const Subspace& s) const {
    if (s.v() != v_ || s.dim() != k_) return false;
    return std::binary_search(keys_.begin(), keys_.end(), pack(s));
}

void BlockSet::add(const Subspace& s) {
    if (s.v() != v_ || s.dim() != k_)
        throw Error("block " + s.to_string() + " does not belong to " + subspace_params(*this));
    keys_.push_back(pack(s));
}

void BlockSet::normalize() {
    std::sort(keys_.begin(), keys_.end());
    auto dup = std::adjacent_find(keys_.begin(), keys_.end());
    if (dup != keys_.end()) throw Error("repeated block " + unpack(field_, v_, k_, *dup).to_string());
}

BlockSet BlockSet::complement() const {
    SubspaceIndex all(field_, v_, k_);
    BlockSet out(field_, v_, k_);
    std::set_difference(all.keys().begin(), all.keys().end(), keys_.begin(), keys_.end(),
                        std::back_inserter(out.keys_));
    return out;
}

BlockSet BlockSet::unite(const BlockSet& other) const {
    if (other.v_ != v_ || other.k_ != k_) throw Error("union of block sets with different parameters");
    BlockSet out(field_, v_, k_);
    std::set_union(keys_.begin(), keys_.end(), other.keys_.begin(), other.keys_.end(), std::back_inserter(out.keys_));
    return out;
}

bool BlockSet::disjoint_from(const BlockSet& other) const {
    auto a = keys_.begin(), b = other.keys_.begin();
    while (a != keys_.end() && b != other.keys_.end()) {
        if (*a == *b) return false;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return true;
}

// ---------------------------------------------------------------------------
// LambdaMap

LambdaMap::LambdaMap(const BlockSet& blocks, int t, unsigned threads)
    : t_(t), index_(blocks.field(), blocks.v(), t), counts_(index_.size(), 0) {
    const int v = blocks.v(), k = blocks.k();
    if (t < 0 || t > v) throw Error("t out of range");
    if (k < t || blocks.empty()) return;
    const auto& f = *blocks.field();
    const unsigned q = f.q();
    const auto patterns = coefficient_patterns(f, k, t);
    const size_t per = static_cast<size_t>(t) * k;
    const size_t npat = per == 0 ? 1 : patterns.size() / per;

    auto work = [&](size_t begin, size_t end, std::vector<std::uint64_t>& counts) {
        std::vector<Element> cm(static_cast<size_t>(k) * v), sub(static_cast<size_t>(t) * v);
        for (size_t b = begin; b < end; ++b) {
            unpack_canonical(blocks.keys()[b], k, v, q, cm.data());
            for (size_t p = 0; p < npat; ++p) {
                combine_rows(f, patterns.data() + p * per, t, k, cm.data(), v, sub.data());
                auto pos = index_.find(pack_canonical(sub.data(), t, v, q));
                if (pos < 0) throw Error("internal: t-subspace missing from index");
                ++counts[pos];
            }
        }
    };

    const unsigned n = std::min<size_t>(resolve_threads(threads), std::max<size_t>(1, blocks.size() / 4096));
    if (n <= 1) {
        work(0, blocks.size(), counts_);
        return;
    }
    std::vector<std::vector<std::uint64_t>> partial(n, std::vector<std::uint64_t>(counts_.size(), 0));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n);
    const size_t chunk = (blocks.size() + n - 1) / n;
    for (unsigned i = 0; i < n; ++i) {
        pool.emplace_back([&, i] {
            try {
                work(std::min(blocks.size(), i * chunk), std::min(blocks.size(), (i + 1) * chunk), partial[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& p : partial)
        for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += p[i];
}

std::uint64_t LambdaMap::at(const Subspace& t) const {
    auto pos = index_.find(t);
    if (pos < 0) throw Error("subspace " + t.to_string() + " is not in the index");
    return counts_[pos];
}

bool LambdaMap::constant() const {
    if (counts_.empty()) return false;
    return std::all_of(counts_.begin(), counts_.end(), [&](std::uint64_t c) { return c == counts_.front(); });
}

// ---------------------------------------------------------------------------
// Verification

VerifyReport verify_design(const SubspaceDesign& d, unsigned threads) {
    VerifyReport report;
    report.blocks = d.blocks.size();
    if (d.t < 0 || d.t > d.k()) {
        report.message = "t must lie in {0, ..., k}";
        return report;
    }
    LambdaMap map(d.blocks, d.t, threads);
    report.t_subspaces = map.counts().size();
    for (size_t i = 0; i < map.counts().size(); ++i) {
        if (BigCount(map.counts()[i]) != d.lambda) {
            report.witness = map.index().subspace_at(i);
            report.witness_count = map.counts()[i];
            report.message = "lambda(T) = " + std::to_string(report.witness_count) + " != " + d.lambda.str() +
                             " for T = " + report.witness->to_string();
            return report;
        }
    }
    report.ok = true;
    report.message = std::to_string(d.t) + "-(" + std::to_string(d.v()) + "," + std::to_string(d.k()) + "," +
                     d.lambda.str() + ")_" + std::to_string(d.q()) + " design with " + std::to_string(report.blocks) +
                     " blocks";
    return report;
}

BigCount LargeSet::lambda() const {
    return gaussian_binomial(v() - t, k() - t, field()->q()) / N();
}

VerifyReport verify_large_set(const LargeSet& ls, unsigned threads) {
    VerifyReport report;
    if (ls.parts.empty()) {
        report.message = "large set has no parts";
        return report;
    }
    const unsigned q = ls.field()->q();
    const BigCount total = gaussian_binomial(ls.v(), ls.k(), q);
    if (total % ls.N() != 0 || gaussian_binomial(ls.v() - ls.t, ls.k() - ls.t, q) % ls.N() != 0) {
        report.message = "parameters are not admissible";
        return report;
    }
    BlockSet all(ls.field(), ls.v(), ls.k());
    for (size_t i = 0; i < ls.parts.size(); ++i) {
        const auto& p = ls.parts[i];
        if (p.v() != ls.v() || p.k() != ls.k()) {
            report.message = "part " + std::to_string(i + 1) + " has different parameters";
            return report;
        }
        if (!all.disjoint_from(p)) {
            report.message = "part " + std::to_string(i + 1) + " overlaps an earlier part";
            return report;
        }
        all = all.unite(p);
    }
    if (BigCount(all.size()) != total) {
        report.message = "parts cover " + std::to_string(all.size()) + " of " + total.str() + " subspaces";
        return report;
    }
    const BigCount lambda = ls.lambda();
    for (size_t i = 0; i < ls.parts.size(); ++i) {
        auto r = verify_design({ls.t, lambda, ls.parts[i]}, threads);
        report.blocks += r.blocks;
        report.t_subspaces = r.t_subspaces;
        if (!r.ok) {
            r.message = "part " + std::to_string(i + 1) + ": " + r.message;
            r.blocks = report.blocks;
            return r;
        }
    }
    report.ok = true;
    report.message = "LS_" + std::to_string(q) + "[" + std::to_string(ls.N()) + "](" + std::to_string(ls.t) + "," +
                     std::to_string(ls.k()) + "," + std::to_string(ls.v()) + "), lambda = " + lambda.str();
    return report;
}

std::optional<Subspace> t_equivalence_witness(const BlockSet& a, const BlockSet& b, int t) {
    if (a.v() != b.v()) throw Error("t-equivalence of block sets in different ambient spaces");
    LambdaMap ma(a, t), mb(b, t);
    for (size_t i = 0; i < ma.counts().size(); ++i)
        if (ma.counts()[i] != mb.counts()[i]) return ma.index().subspace_at(i);
    return std::nullopt;
}

bool is_t_equivalent(const BlockSet& a, const BlockSet& b, int t) { return !t_equivalence_witness(a, b, t); }

bool admissible(unsigned q, const BigCount& N, int t, int k, int v) {
    if (N <= 0) return false;
    for (int i = 0; i <= t; ++i)
        if (gaussian_binomial(v - i, k - i, q) % N != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Transformations

BlockSet dual(const BlockSet& blocks) {
    BlockSet out(blocks.field(), blocks.v(), blocks.v() - blocks.k());
    for (size_t i = 0; i < blocks.size(); ++i) out.add(dual(blocks.at(i)));
    out.normalize();
    return out;
}

SubspaceDesign supplementary(const SubspaceDesign& d) {
    return {d.t, gaussian_binomial(d.v() - d.t, d.k() - d.t, d.q()) - d.lambda, d.blocks.complement()};
}

TransformKind parse_transform_kind(const std::string& name) {
    if (name == "dual") return TransformKind::Dual;
    if (name == "reduced") return TransformKind::Reduced;
    if (name == "derived") return TransformKind::Derived;
    if (name == "residual") return TransformKind::Residual;
    if (name == "merge") return TransformKind::Merge;
    throw Error("unknown transform '" + name + "' (expected dual, reduced, derived, residual or merge)");
}

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::Dual: return "dual";
        case TransformKind::Reduced: return "reduced";
        case TransformKind::Derived: return "derived";
        case TransformKind::Residual: return "residual";
        case TransformKind::Merge: return "merge";
    }
    return "?";
}

BlockSet derived(const BlockSet& blocks) {
    if (blocks.k() < 1) throw Error("derived blocks need k >= 1");
    const int v = blocks.v(), k = blocks.k();
    BlockSet out(blocks.field(), v - 1, k - 1);
    for (size_t i = 0; i < blocks.size(); ++i) {
        Subspace b = blocks.at(i);
        // <e_v> <= B iff the last row of the canonical matrix is e_v
        if (b.pivots().back() != v - 1) continue;
        out.add(quotient_by_chain(b, 1));
    }
    out.normalize();
    return out;
}

BlockSet residual(const BlockSet& blocks) {
    const int v = blocks.v(), k = blocks.k();
    if (v < 1) throw Error("residual blocks need v >= 1");
    BlockSet out(blocks.field(), v - 1, k);
    for (size_t i = 0; i < blocks.size(); ++i) {
        Subspace b = blocks.at(i);
        if (k > 0 && b.pivots().front() == 0) continue;
        out.add(restrict_to_chain(b, v - 1));
    }
    out.normalize();
    return out;
}

LargeSet transform(const LargeSet& ls, TransformKind kind, int d) {
    LargeSet out;
    switch (kind) {
        case TransformKind::Dual:
            if (ls.t > ls.v() - ls.k()) throw Error("dual needs t <= v - k");
            out.t = ls.t;
            for (const auto& p : ls.parts) out.parts.push_back(dual(p));
            break;
        case TransformKind::Reduced:
            if (ls.t < 1) throw Error("reduced large set needs t >= 1");
            out = ls;
            out.t = ls.t - 1;
            break;
        case TransformKind::Derived:
            if (ls.t < 1) throw Error("derived large set needs t >= 1");
            out.t = ls.t - 1;
            for (const auto& p : ls.parts) out.parts.push_back(derived(p));
            break;
        case TransformKind::Residual:
            if (ls.t < 1) throw Error("residual large set needs t >= 1");
            out.t = ls.t - 1;
            for (const auto& p : ls.parts) out.parts.push_back(residual(p));
            break;
        case TransformKind::Merge: {
            const int N = ls.N();
            if (d < 1 || N % d != 0) throw Error("merge target must divide N = " + std::to_string(N));
            out.t = ls.t;
            const int group = N / d;
            for (int j = 0; j < d; ++j) {
                BlockSet u(ls.field(), ls.v(), ls.k());
                for (int i = j * group; i < (j + 1) * group; ++i) u = u.unite(ls.parts[i]);
                out.parts.push_back(std::move(u));
            }
            break;
        }
    }
    return out;
}

LargeSet trivial_large_set(const FieldPtr& field, int N, int k, int v) {
    if (!admissible(field->q(), N, 0, k, v)) throw Error("LS[N](0,k,v) is not admissible: N does not divide [v,k]_q");
    const std::uint64_t total = gaussian_binomial_u64(v, k, field->q());
    const std::uint64_t slice = total / N;
    LargeSet ls;
    ls.t = 0;
    for (int i = 0; i < N; ++i) ls.parts.emplace_back(field, v, k);
    std::uint64_t n = 0;
    const unsigned q = field->q();
    for_each_canonical(*field, v, k, [&](const Element* cm) {
        ls.parts[n / slice].add_key(pack_canonical(cm, k, v, q));
        ++n;
        return true;
    });
    for (auto& p : ls.parts) p.normalize();
    return ls;
}

}  // namespace qdesign
