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

#ifndef QDESIGN_PARTITION_HPP
#define QDESIGN_PARTITION_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qdesign/design.hpp"
#include "qdesign/joins.hpp"

namespace qdesign {

/// Cyclic Latin square A[x][y] = (x + y) mod N, 0-based.
inline int latin_entry(int x, int y, int N) { return (x + y) % N; }

/**
 * A family of k-subspaces of GF(q)^v split into parts.
 *
 * certified_t >= 0: `parts` has N entries that are pairwise t-equivalent.
 * certified_t == -1: no condition; the family is the union of `parts`.
 */
struct PartitionedFamily {
    int N = 1;
    int certified_t = -1;
    std::vector<BlockSet> parts;

    BlockSet all() const;
    int v() const { return parts.at(0).v(); }
    int k() const { return parts.at(0).k(); }
    const FieldPtr& field() const { return parts.at(0).field(); }
};

/// Family with no certification: a single part holding `blocks`.
PartitionedFamily unpartitioned(const BlockSet& blocks, int N);

/// Whether all parts are pairwise t-equivalent (t = -1 is always true).
bool check_partition(const PartitionedFamily& f, int t);

/// Latin-square combination: part i collects the joins of left part x and right part y with
/// latin_entry(x, y, N) = i; a side with certified_t == -1 passes through whole.
/// `left` lives in GF(q)^{u1} (k1-subspaces), `right` in GF(q)^{v-u2} (k2bar-subspaces).
PartitionedFamily combine(const PartitionedFamily& left, const PartitionedFamily& right, const JoinSpec& spec);

/// Partwise union of pairwise disjoint families with equal N and certified_t.
PartitionedFamily union_partitions(const std::vector<PartitionedFamily>& fams);

PartitionedFamily from_large_set(const LargeSet& ls);
/// Requires the family to cover the Grassmannian; verifies every part.
LargeSet to_large_set(const PartitionedFamily& f);

// ---------------------------------------------------------------------------
// Construction plans

class PlanNode;
using PlanPtr = std::shared_ptr<const PlanNode>;

/// Per-part counts #{B in part : S <= B <= W}; a single entry for unpartitioned nodes.
using PartCounts = std::vector<BigCount>;

/**
 * Node of a construction tree for an (N, t)-partitioned family of k-subspaces of GF(q)^v.
 * Queries are answered lazily and memoized per node.
 */
class PlanNode : public std::enable_shared_from_this<PlanNode> {
   public:
    virtual ~PlanNode() = default;

    const FieldPtr& field() const noexcept { return field_; }
    int v() const noexcept { return v_; }
    int k() const noexcept { return k_; }
    int N() const noexcept { return N_; }
    int certified_t() const noexcept { return t_; }
    /// The family is the whole Grassmannian [v, k]_q.
    bool complete() const noexcept { return complete_; }
    /// Number of entries returned by interval(): N when partitioned, otherwise 1.
    int width() const noexcept { return t_ >= 0 ? N_ : 1; }

    /// #{B in part : S <= B <= W} for S <= W in GF(q)^v.
    PartCounts interval(const Subspace& s, const Subspace& w) const;
    /// lambda(T, part) for every part.
    PartCounts lambda(const Subspace& t) const;

    /// Explicit parts (desk-scale only).
    PartitionedFamily materialize() const;

    /// One-line description of this node.
    virtual std::string label() const = 0;
    virtual std::vector<PlanPtr> children() const { return {}; }

    std::size_t memo_size() const;

   protected:
    PlanNode(FieldPtr field, int v, int k, int N, int t, bool complete);

    virtual PartCounts compute(const Subspace& s, const Subspace& w) const = 0;
    virtual PartitionedFamily build() const = 0;

    PartCounts zeros() const { return PartCounts(width(), 0); }

   private:
    FieldPtr field_;
    int v_, k_, N_, t_;
    bool complete_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, PartCounts> memo_;
};

/// The whole Grassmannian [v, k]_q, unpartitioned.
PlanPtr full_grassmannian(FieldPtr field, int v, int k, int N);
/// A stored large set; certified at its t.
PlanPtr explicit_large_set(const LargeSet& ls);
/// A stored partitioned family.
PlanPtr explicit_family(const PartitionedFamily& fam);
/// Latin-square join of two plans over a standard-flag join cell.
PlanPtr latin_join(PlanPtr left, PlanPtr right, const JoinSpec& spec);
/// Partwise union of disjoint children sharing N and certified t.
PlanPtr disjoint_union(std::vector<PlanPtr> children);
/// Derived large set through <e_v>; child must be complete with t >= 1.
PlanPtr derived_plan(PlanPtr child);
/// Residual large set in {x_1 = 0}; child must be complete with t >= 1.
PlanPtr residual_plan(PlanPtr child);

/// LS(t, k, v) from LS(t, k-1, v-1) and LS(t, k, v-1) over the q-Pascal cells.
PlanPtr recurse_tvtq(PlanPtr ls_a, PlanPtr ls_b);
/// LS[N](2, 3, v) for v = 2 mod 4 from a plan for LS[N](2, 3, 6).
PlanPtr recurse_one_parameter(PlanPtr base, int v);
/// LS[N](2, k, v) for v = 2 mod 4, k = 3 mod 4, 3 <= k <= v - 3.
PlanPtr recurse_two_parameter(PlanPtr base, int k, int v);

/// Indented certificate tree.
std::string describe(const PlanPtr& plan);

/// Uniformly random t-subspace of GF(q)^v.
template <class Rng>
Subspace random_subspace(const FieldPtr& field, int v, int t, Rng& rng) {
    while (true) {
        MatGF m(field, t, v);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < v; ++j) m.set(i, j, static_cast<unsigned>(rng() % field->q()));
        Subspace s = Subspace::span(m);
        if (s.dim() == t) return s;
    }
}

}  // namespace qdesign

#endif  // QDESIGN_PARTITION_HPP
