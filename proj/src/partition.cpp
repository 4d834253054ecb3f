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

#include "qdesign/partition.hpp"

#include <algorithm>
#include <sstream>

namespace qdesign {

namespace {

int combined_t(int t1, int t2) {
    if (t1 < 0 && t2 < 0) return -1;
    if (t1 < 0) return t2;
    if (t2 < 0) return t1;
    return t1 + t2 + 1;
}

std::string params(int v, int k, unsigned q) {
    return "[" + std::to_string(v) + "," + std::to_string(k) + "]_" + std::to_string(q);
}

void join_blocks(const BlockSet& left, const BlockSet& right, const JoinSpec& spec, BlockSet& out) {
    for (size_t a = 0; a < left.size(); ++a) {
        const Subspace k1 = embed_into_chain(left.at(a), spec.v);
        for (size_t b = 0; b < right.size(); ++b) {
            const Subspace k2 = lift_from_quotient(right.at(b), spec.u2);
            join_for_each(k1, k2, spec, [&](const Subspace& s) {
                out.add(s);
                return true;
            });
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Explicit families

BlockSet PartitionedFamily::all() const {
    BlockSet out(field(), v(), k());
    for (const auto& p : parts) out = out.unite(p);
    return out;
}

PartitionedFamily unpartitioned(const BlockSet& blocks, int N) { return {N, -1, {blocks}}; }

bool check_partition(const PartitionedFamily& f, int t) {
    if (t < 0) return true;
    if (static_cast<int>(f.parts.size()) != f.N) return false;
    for (size_t i = 0; i < f.parts.size(); ++i)
        for (size_t j = i + 1; j < f.parts.size(); ++j)
            if (!f.parts[i].disjoint_from(f.parts[j])) return false;
    if (t > f.v()) return false;
    LambdaMap first(f.parts[0], t);
    for (size_t i = 1; i < f.parts.size(); ++i)
        if (LambdaMap(f.parts[i], t).counts() != first.counts()) return false;
    return true;
}

PartitionedFamily combine(const PartitionedFamily& left, const PartitionedFamily& right, const JoinSpec& spec) {
    spec.validate();
    if (left.N != right.N) throw Error("combine: families have different N");
    if (left.v() != spec.u1 || left.k() != spec.k1)
        throw Error("combine: left family must consist of " + std::to_string(spec.k1) + "-subspaces of GF(q)^" +
                    std::to_string(spec.u1));
    if (right.v() != spec.v - spec.u2 || right.k() != spec.k2bar)
        throw Error("combine: right family must consist of " + std::to_string(spec.k2bar) + "-subspaces of GF(q)^" +
                    std::to_string(spec.v - spec.u2));
    const int N = left.N;
    const bool lp = left.certified_t >= 0, rp = right.certified_t >= 0;
    if (lp && static_cast<int>(left.parts.size()) != N) throw Error("combine: left family needs N parts");
    if (rp && static_cast<int>(right.parts.size()) != N) throw Error("combine: right family needs N parts");

    PartitionedFamily out;
    out.N = N;
    out.certified_t = combined_t(left.certified_t, right.certified_t);
    const auto& field = left.field();
    const int width = out.certified_t >= 0 ? N : 1;
    for (int i = 0; i < width; ++i) out.parts.emplace_back(field, spec.v, spec.k());

    if (lp && rp) {
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y) join_blocks(left.parts[x], right.parts[y], spec, out.parts[latin_entry(x, y, N)]);
    } else if (lp) {
        const BlockSet r = right.all();
        for (int i = 0; i < N; ++i) join_blocks(left.parts[i], r, spec, out.parts[i]);
    } else if (rp) {
        const BlockSet l = left.all();
        for (int i = 0; i < N; ++i) join_blocks(l, right.parts[i], spec, out.parts[i]);
    } else {
        join_blocks(left.all(), right.all(), spec, out.parts[0]);
    }
    for (auto& p : out.parts) p.normalize();
    return out;
}

PartitionedFamily union_partitions(const std::vector<PartitionedFamily>& fams) {
    if (fams.empty()) throw Error("union of no families");
    PartitionedFamily out = fams.front();
    for (size_t j = 1; j < fams.size(); ++j) {
        const auto& f = fams[j];
        if (f.N != out.N || f.certified_t != out.certified_t || f.parts.size() != out.parts.size())
            throw Error("union: families differ in N or certified t");
        if (f.v() != out.v() || f.k() != out.k()) throw Error("union: families differ in ambient space or dimension");
        for (size_t i = 0; i < out.parts.size(); ++i) {
            for (const auto& g : fams) {
                if (&g == &f) break;
                for (const auto& p : g.parts)
                    if (!p.disjoint_from(f.parts[i])) {
                        for (auto key : f.parts[i].keys())
                            if (std::binary_search(p.keys().begin(), p.keys().end(), key))
                                throw Error("union: families overlap at " +
                                            unpack(f.field(), f.v(), f.k(), key).to_string());
                    }
            }
            out.parts[i] = out.parts[i].unite(f.parts[i]);
        }
    }
    return out;
}

PartitionedFamily from_large_set(const LargeSet& ls) { return {ls.N(), ls.t, ls.parts}; }

LargeSet to_large_set(const PartitionedFamily& f) {
    if (f.certified_t < 0) throw Error("to_large_set: family is not certified");
    LargeSet ls{f.certified_t, f.parts};
    auto report = verify_large_set(ls);
    if (!report.ok) throw Error("to_large_set: " + report.message);
    return ls;
}

// ---------------------------------------------------------------------------
// PlanNode

PlanNode::PlanNode(FieldPtr field, int v, int k, int N, int t, bool complete)
    : field_(std::move(field)), v_(v), k_(k), N_(N), t_(t), complete_(complete) {
    if (N < 1) throw Error("N must be positive");
}

PartCounts PlanNode::interval(const Subspace& s, const Subspace& w) const {
    if (s.v() != v_ || w.v() != v_)
        throw Error("query dimension mismatch: node lives in GF(q)^" + std::to_string(v_));
    if (s.dim() > k_ || w.dim() < k_ || !w.contains(s)) return zeros();
    std::string key = s.key();
    key += w.key();
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    PartCounts r = compute(s, w);
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), r);
    return r;
}

PartCounts PlanNode::lambda(const Subspace& t) const { return interval(t, Subspace::full(field_, v_)); }

PartitionedFamily PlanNode::materialize() const {
    if (!packable(v_, k_, field_->q())) throw Error("plan too large to materialize");
    return build();
}

std::size_t PlanNode::memo_size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

namespace {

class FullNode final : public PlanNode {
   public:
    FullNode(FieldPtr field, int v, int k, int N) : PlanNode(std::move(field), v, k, N, -1, true) {}

    std::string label() const override { return "full Grassmannian " + params(v(), k(), field()->q()) + ", t=-1"; }

   protected:
    PartCounts compute(const Subspace& s, const Subspace& w) const override {
        return {gaussian_binomial(w.dim() - s.dim(), k() - s.dim(), field()->q())};
    }
    PartitionedFamily build() const override {
        return unpartitioned(BlockSet::grassmannian(field(), v(), k()), N());
    }
};

class ExplicitNode final : public PlanNode {
   public:
    ExplicitNode(PartitionedFamily fam, bool complete, std::string what)
        : PlanNode(fam.field(), fam.v(), fam.k(), fam.N, fam.certified_t, complete),
          fam_(std::move(fam)),
          what_(std::move(what)) {
        if (fam_.certified_t >= 0 && static_cast<int>(fam_.parts.size()) != fam_.N)
            throw Error("partitioned family needs N parts");
        if (fam_.certified_t < 0 && fam_.parts.size() != 1) fam_.parts = {fam_.all()};
    }

    std::string label() const override {
        return what_ + " " + params(v(), k(), field()->q()) + ", N=" + std::to_string(N()) +
               ", t=" + std::to_string(certified_t());
    }

   protected:
    PartCounts compute(const Subspace& s, const Subspace& w) const override {
        const int e = s.dim(), d = w.dim();
        if (e < k() && k() <= d) {
            std::uint64_t total = 0;
            for (const auto& p : fam_.parts) total += p.size();
            if (e > 0 && BigCount(gaussian_binomial(d - e, k() - e, field()->q())) * fam_.parts.size() < total)
                return enumerate_interval(s, w);
        }
        PartCounts out(fam_.parts.size(), 0);
        if (w.dim() == v()) {
            for (size_t i = 0; i < fam_.parts.size(); ++i) {
                const auto& part = fam_.parts[i];
                if (s.dim() == k())
                    out[i] = part.contains(s) ? 1 : 0;
                else if (s.dim() == 0)
                    out[i] = part.size();
                else
                    out[i] = table(i, s.dim()).at(s);
            }
            return out;
        }
        const auto& lists = restricted(w);
        for (size_t i = 0; i < lists.size(); ++i) {
            std::uint64_t n = 0;
            for (const auto& b : lists[i])
                if (b.contains(s)) ++n;
            out[i] = n;
        }
        return out;
    }

    PartitionedFamily build() const override { return fam_; }

   private:
    const LambdaMap& table(size_t part, int s) const {
        std::lock_guard lock(cache_mutex_);
        auto key = std::make_pair(part, s);
        auto it = tables_.find(key);
        if (it == tables_.end()) it = tables_.emplace(key, std::make_unique<LambdaMap>(fam_.parts[part], s)).first;
        return *it->second;
    }

    // Walks the k-subspaces U with s <= U <= w and looks each one up.
    PartCounts enumerate_interval(const Subspace& s, const Subspace& w) const {
        const auto& f = *field();
        const int e = s.dim(), d = w.dim(), n = v();
        std::vector<const Element*> comp;
        Subspace cur = s;
        for (int r = 0; r < d && cur.dim() < d; ++r) {
            if (cur.contains_vector(w.row(r))) continue;
            comp.push_back(w.row(r));
            MatGF one(field(), 1, n);
            for (int j = 0; j < n; ++j) one.set(0, j, w.at(r, j));
            cur = sum(cur, Subspace::span(one));
        }
        PartCounts out(fam_.parts.size(), 0);
        const int extra = k() - e;
        for_each_canonical(f, d - e, extra, [&](const Element* x) {
            MatGF gens(field(), k(), n);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < n; ++j) gens.set(i, j, s.at(i, j));
            for (int i = 0; i < extra; ++i)
                for (int c = 0; c < d - e; ++c) {
                    const Element a = x[i * (d - e) + c];
                    if (!a) continue;
                    for (int j = 0; j < n; ++j)
                        gens.set(e + i, j, f.add(gens.at(e + i, j), f.mul(a, comp[c][j])));
                }
            const Subspace u = Subspace::span(gens);
            for (size_t p = 0; p < fam_.parts.size(); ++p)
                if (fam_.parts[p].contains(u)) out[p] += 1;
            return true;
        });
        return out;
    }

    const std::vector<std::vector<Subspace>>& restricted(const Subspace& w) const {
        std::lock_guard lock(cache_mutex_);
        auto key = w.key();
        auto it = restricted_.find(key);
        if (it != restricted_.end()) return it->second;
        std::vector<std::vector<Subspace>> lists(fam_.parts.size());
        for (size_t i = 0; i < fam_.parts.size(); ++i)
            for (size_t j = 0; j < fam_.parts[i].size(); ++j) {
                Subspace b = fam_.parts[i].at(j);
                if (w.contains(b)) lists[i].push_back(std::move(b));
            }
        return restricted_.emplace(key, std::move(lists)).first->second;
    }

    PartitionedFamily fam_;
    std::string what_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<size_t, int>, std::unique_ptr<LambdaMap>> tables_;
    mutable std::unordered_map<std::string, std::vector<std::vector<Subspace>>> restricted_;
};

class JoinNode final : public PlanNode {
   public:
    JoinNode(PlanPtr left, PlanPtr right, const JoinSpec& spec)
        : PlanNode(left->field(), spec.v, spec.k(), left->N(), combined_t(left->certified_t(), right->certified_t()),
                   false),
          left_(std::move(left)),
          right_(std::move(right)),
          spec_(spec) {
        spec_.validate();
        if (left_->N() != right_->N()) throw Error("latin join: children have different N");
        if (left_->v() != spec.u1 || left_->k() != spec.k1)
            throw Error("latin join: left child must be " + params(spec.u1, spec.k1, field()->q()) + ", got " +
                        params(left_->v(), left_->k(), field()->q()));
        if (right_->v() != spec.v - spec.u2 || right_->k() != spec.k2bar)
            throw Error("latin join: right child must be " + params(spec.v - spec.u2, spec.k2bar, field()->q()) +
                        ", got " + params(right_->v(), right_->k(), field()->q()));
        const auto ord = as_ordinary(spec_);
        u_ = ord.u1;
        kbar_ = ord.k2bar;
    }

    std::string label() const override {
        return "latin join " + to_string(spec_) + " -> " + params(v(), k(), field()->q()) +
               ", t=" + std::to_string(certified_t());
    }
    std::vector<PlanPtr> children() const override { return {left_, right_}; }

   protected:
    // The cell is the ordinary join over U = V_u of the (possibly embedded or lifted) child families.
    PartCounts compute(const Subspace& s, const Subspace& w) const override {
        const int u = u_;
        const Subspace s_meet = meet_with_chain(s, u);
        const Subspace su = restrict_to_chain(s_meet, u);
        const Subspace wu = restrict_to_chain(meet_with_chain(w, u), u);
        const Subspace sq = quotient_by_chain(join_with_chain(s, u), u);
        const Subspace wq = quotient_by_chain(join_with_chain(w, u), u);
        const int r = s.dim() - s_meet.dim();
        const int a = wu.dim() - spec_.k1, b = kbar_ - r;
        if (a < 0 || b < 0) return zeros();

        const PartCounts lc = left_counts(su, wu);
        const PartCounts rc = right_counts(sq, wq);
        const BigCount weight = big_pow(field()->q(), a * b);
        const int N = this->N();
        PartCounts out = zeros();
        const bool lp = left_->certified_t() >= 0, rp = right_->certified_t() >= 0;
        if (lp && rp) {
            for (int x = 0; x < N; ++x)
                for (int y = 0; y < N; ++y) out[latin_entry(x, y, N)] += lc[x] * rc[y];
        } else if (lp) {
            for (int i = 0; i < N; ++i) out[i] = lc[i] * rc[0];
        } else if (rp) {
            for (int i = 0; i < N; ++i) out[i] = lc[0] * rc[i];
        } else {
            out[0] = lc[0] * rc[0];
        }
        for (auto& x : out) x *= weight;
        return out;
    }

    PartitionedFamily build() const override { return combine(left_->materialize(), right_->materialize(), spec_); }

   private:
    // Left family as k1-subspaces of V_u.
    PartCounts left_counts(const Subspace& s, const Subspace& w) const {
        if (spec_.kind != JoinKind::Avoiding) return left_->interval(s, w);
        // avoiding: members live in V_{u1} < V_{u2} = V_u
        const int u1 = spec_.u1;
        for (int p : s.pivots())
            if (p < s.v() - u1) return PartCounts(left_->width(), 0);
        return left_->interval(restrict_to_chain(s, u1), restrict_to_chain(meet_with_chain(w, u1), u1));
    }

    // Right family as subspaces of V / V_u.
    PartCounts right_counts(const Subspace& s, const Subspace& w) const {
        if (spec_.kind != JoinKind::Covering) return right_->interval(s, w);
        // covering: members are lifted by the f coordinates of V_{u2} / V_{u1}
        const int f = spec_.f();
        if (!w.contains(Subspace::chain(w.field(), w.v(), f))) return PartCounts(right_->width(), 0);
        return right_->interval(quotient_by_chain(join_with_chain(s, f), f), quotient_by_chain(w, f));
    }

    PlanPtr left_, right_;
    JoinSpec spec_;
    int u_ = 0, kbar_ = 0;
};

class UnionNode final : public PlanNode {
   public:
    UnionNode(FieldPtr field, int v, int k, int N, int t, bool complete, std::vector<PlanPtr> children)
        : PlanNode(std::move(field), v, k, N, t, complete), children_(std::move(children)) {}

    std::string label() const override {
        return "disjoint union of " + std::to_string(children_.size()) + " cells -> " +
               params(v(), k(), field()->q()) + ", t=" + std::to_string(certified_t()) +
               (complete() ? ", complete" : "");
    }
    std::vector<PlanPtr> children() const override { return children_; }

   protected:
    PartCounts compute(const Subspace& s, const Subspace& w) const override {
        PartCounts out = zeros();
        for (const auto& c : children_) {
            auto r = c->interval(s, w);
            for (size_t i = 0; i < out.size(); ++i) out[i] += r[i];
        }
        return out;
    }

    PartitionedFamily build() const override {
        std::vector<PartitionedFamily> fams;
        for (const auto& c : children_) fams.push_back(c->materialize());
        return union_partitions(fams);
    }

   private:
    std::vector<PlanPtr> children_;
};

class DerivedNode final : public PlanNode {
   public:
    explicit DerivedNode(PlanPtr child)
        : PlanNode(child->field(), child->v() - 1, child->k() - 1, child->N(), child->certified_t() - 1, true),
          child_(std::move(child)) {
        if (!child_->complete() || child_->certified_t() < 1 || child_->k() < 1)
            throw Error("derived large set needs a complete child with t >= 1");
    }

    std::string label() const override {
        return "derived -> " + params(v(), k(), field()->q()) + ", t=" + std::to_string(certified_t());
    }
    std::vector<PlanPtr> children() const override { return {child_}; }

   protected:
    PartCounts compute(const Subspace& s, const Subspace& w) const override {
        return child_->interval(lift_from_quotient(s, 1), lift_from_quotient(w, 1));
    }
    PartitionedFamily build() const override {
        auto fam = child_->materialize();
        for (auto& p : fam.parts) p = derived(p);
        fam.certified_t = certified_t();
        return fam;
    }

   private:
    PlanPtr child_;
};

class ResidualNode final : public PlanNode {
   public:
    explicit ResidualNode(PlanPtr child)
        : PlanNode(child->field(), child->v() - 1, child->k(), child->N(), child->certified_t() - 1, true),
          child_(std::move(child)) {
        if (!child_->complete() || child_->certified_t() < 1)
            throw Error("residual large set needs a complete child with t >= 1");
    }

    std::string label() const override {
        return "residual -> " + params(v(), k(), field()->q()) + ", t=" + std::to_string(certified_t());
    }
    std::vector<PlanPtr> children() const override { return {child_}; }

   protected:
    PartCounts compute(const Subspace& s, const Subspace& w) const override {
        return child_->interval(embed_into_chain(s, v() + 1), embed_into_chain(w, v() + 1));
    }
    PartitionedFamily build() const override {
        auto fam = child_->materialize();
        for (auto& p : fam.parts) p = residual(p);
        fam.certified_t = certified_t();
        return fam;
    }

   private:
    PlanPtr child_;
};

}  // namespace

PlanPtr full_grassmannian(FieldPtr field, int v, int k, int N) {
    return std::make_shared<FullNode>(std::move(field), v, k, N);
}

PlanPtr explicit_large_set(const LargeSet& ls) {
    return std::make_shared<ExplicitNode>(from_large_set(ls), true, "stored large set");
}

PlanPtr explicit_family(const PartitionedFamily& fam) {
    BigCount size = 0;
    for (const auto& p : fam.parts) size += p.size();
    bool complete = size == gaussian_binomial(fam.v(), fam.k(), fam.field()->q());
    return std::make_shared<ExplicitNode>(fam, complete, "stored family");
}

PlanPtr latin_join(PlanPtr left, PlanPtr right, const JoinSpec& spec) {
    return std::make_shared<JoinNode>(std::move(left), std::move(right), spec);
}

PlanPtr disjoint_union(std::vector<PlanPtr> children) {
    if (children.empty()) throw Error("disjoint union of no children");
    const auto& first = children.front();
    BigCount size = 0;
    for (const auto& c : children) {
        if (c->v() != first->v() || c->k() != first->k() || c->N() != first->N())
            throw Error("disjoint union: children differ in parameters");
        if (c->certified_t() != first->certified_t())
            throw Error("disjoint union: children must share the certified t");
        for (const auto& x : c->interval(Subspace::zero(c->field(), c->v()), Subspace::full(c->field(), c->v())))
            size += x;
    }
    const bool complete = size == gaussian_binomial(first->v(), first->k(), first->field()->q());
    return std::make_shared<UnionNode>(first->field(), first->v(), first->k(), first->N(), first->certified_t(),
                                       complete, std::move(children));
}

PlanPtr derived_plan(PlanPtr child) { return std::make_shared<DerivedNode>(std::move(child)); }
PlanPtr residual_plan(PlanPtr child) { return std::make_shared<ResidualNode>(std::move(child)); }

PlanPtr recurse_tvtq(PlanPtr ls_a, PlanPtr ls_b) {
    const int v = ls_b->v() + 1, k = ls_b->k();
    if (ls_a->v() != v - 1 || ls_a->k() != k - 1) throw Error("tvtq: first input must be LS(t, k-1, v-1)");
    if (ls_a->certified_t() != ls_b->certified_t() || ls_a->N() != ls_b->N())
        throw Error("tvtq: inputs differ in t or N");
    if (!ls_a->complete() || !ls_b->complete()) throw Error("tvtq: inputs must be large sets");
    const int N = ls_a->N();
    auto point = full_grassmannian(ls_a->field(), 0, 0, N);
    return disjoint_union({latin_join(ls_a, point, {JoinKind::Covering, v, v - 1, v, k - 1, 0}),
                           latin_join(ls_b, point, {JoinKind::Avoiding, v, v - 1, v, k, 0})});
}

namespace {

void check_base(const PlanPtr& base) {
    if (base->v() != 6 || base->k() != 3 || base->certified_t() != 2 || !base->complete())
        throw Error("base must be a large set LS[N](2,3,6)");
}

}  // namespace

PlanPtr recurse_one_parameter(PlanPtr base, int v) {
    check_base(base);
    if (v < 6 || v % 4 != 2) throw Error("one-parameter recursion needs v >= 6 and v = 2 mod 4, got v = " + std::to_string(v));
    if (v == 6) return base;
    auto sub = recurse_one_parameter(base, v - 4);
    const auto& field = base->field();
    const int N = base->N();
    // Avoid(s = 3) cells [3+i, i] * [v-4-i, 3-i]
    std::vector<PlanPtr> cells;
    cells.push_back(latin_join(full_grassmannian(field, 3, 0, N), sub, {JoinKind::Avoiding, v, 3, 4, 0, 3}));
    cells.push_back(latin_join(derived_plan(derived_plan(base)), derived_plan(sub), {JoinKind::Avoiding, v, 4, 5, 1, 2}));
    cells.push_back(latin_join(derived_plan(base), derived_plan(derived_plan(sub)), {JoinKind::Avoiding, v, 5, 6, 2, 1}));
    cells.push_back(latin_join(base, full_grassmannian(field, v - 7, 0, N), {JoinKind::Avoiding, v, 6, 7, 3, 0}));
    return disjoint_union(std::move(cells));
}

namespace {

PlanPtr two_parameter(const PlanPtr& base, int k, int v, std::map<std::pair<int, int>, PlanPtr>& memo) {
    if (auto it = memo.find({k, v}); it != memo.end()) return it->second;
    PlanPtr plan;
    if (k == 3) {
        plan = recurse_one_parameter(base, v);
    } else {
        const auto& field = base->field();
        const int N = base->N();
        std::vector<PlanPtr> cells;
        // Cover(s = 3) cells [v-4-i, k-4] * [3+i, 3], i = 0..v-k
        for (int i = 0; i <= v - k; ++i) {
            PlanPtr left, right;
            switch (i % 4) {
                case 0:
                    left = two_parameter(base, k - 4, v - 4 - i, memo);
                    right = full_grassmannian(field, 3 + i, 3, N);
                    break;
                case 1:
                    left = residual_plan(two_parameter(base, k - 4, v - 3 - i, memo));
                    right = residual_plan(residual_plan(two_parameter(base, 3, 5 + i, memo)));
                    break;
                case 2:
                    left = residual_plan(residual_plan(two_parameter(base, k - 4, v - 2 - i, memo)));
                    right = residual_plan(two_parameter(base, 3, 4 + i, memo));
                    break;
                default:
                    left = full_grassmannian(field, v - 4 - i, k - 4, N);
                    right = two_parameter(base, 3, 3 + i, memo);
                    break;
            }
            cells.push_back(latin_join(left, right, {JoinKind::Covering, v, v - 4 - i, v - 3 - i, k - 4, 3}));
        }
        plan = disjoint_union(std::move(cells));
    }
    memo.emplace(std::make_pair(k, v), plan);
    return plan;
}

}  // namespace

PlanPtr recurse_two_parameter(PlanPtr base, int k, int v) {
    check_base(base);
    if (v < 6 || v % 4 != 2 || k < 3 || k > v - 3 || k % 4 != 3)
        throw Error("two-parameter recursion needs v >= 6, v = 2 mod 4, 3 <= k <= v - 3 and k = 3 mod 4; got k = " +
                    std::to_string(k) + ", v = " + std::to_string(v));
    std::map<std::pair<int, int>, PlanPtr> memo;
    return two_parameter(base, k, v, memo);
}

namespace {
void describe_into(const PlanPtr& node, int depth, std::ostringstream& out) {
    out << std::string(2 * depth, ' ') << node->label() << "\n";
    for (const auto& c : node->children()) describe_into(c, depth + 1, out);
}
}  // namespace

std::string describe(const PlanPtr& plan) {
    std::ostringstream out;
    describe_into(plan, 0, out);
    return out.str();
}

}  // namespace qdesign
