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

#ifndef QDESIGN_DESIGN_HPP
#define QDESIGN_DESIGN_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdesign/grassmann.hpp"

namespace qdesign {

/// A set of k-subspaces of GF(q)^v held as sorted, distinct packed keys.
class BlockSet {
   public:
    BlockSet() = default;
    BlockSet(FieldPtr field, int v, int k);
    BlockSet(FieldPtr field, int v, int k, std::vector<PackedKey> keys);

    /// Every k-subspace of GF(q)^v.
    static BlockSet grassmannian(FieldPtr field, int v, int k);

    const FieldPtr& field() const noexcept { return field_; }
    int v() const noexcept { return v_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }

    const std::vector<PackedKey>& keys() const noexcept { return keys_; }
    Subspace at(std::size_t i) const { return unpack(field_, v_, k_, keys_[i]); }
    std::vector<Subspace> subspaces() const;
    bool contains(const Subspace& s) const;

    /// Adds blocks; sorting and duplicate checks happen in normalize().
    void add(const Subspace& s);
    void add_key(PackedKey key) { keys_.push_back(key); }
    /// Sorts; throws Error on duplicates (designs are simple).
    void normalize();

    BlockSet complement() const;
    BlockSet unite(const BlockSet& other) const;
    bool disjoint_from(const BlockSet& other) const;

    friend bool operator==(const BlockSet& a, const BlockSet& b) { return a.v_ == b.v_ && a.k_ == b.k_ && a.keys_ == b.keys_; }

   private:
    FieldPtr field_;
    int v_ = 0, k_ = 0;
    std::vector<PackedKey> keys_;
};

/// Counts lambda(T, blocks) for every t-subspace T of the ambient space.
class LambdaMap {
   public:
    LambdaMap(const BlockSet& blocks, int t, unsigned threads = 0);

    int t() const noexcept { return t_; }
    const SubspaceIndex& index() const noexcept { return index_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t at(const Subspace& t) const;

    /// Whether every count equals the first; false for an empty index.
    bool constant() const;

   private:
    int t_;
    SubspaceIndex index_;
    std::vector<std::uint64_t> counts_;
};

struct SubspaceDesign {
    int t = 0;
    BigCount lambda = 0;
    BlockSet blocks;

    int v() const { return blocks.v(); }
    int k() const { return blocks.k(); }
    unsigned q() const { return blocks.field()->q(); }
};

struct LargeSet {
    int t = 0;
    std::vector<BlockSet> parts;

    int N() const { return static_cast<int>(parts.size()); }
    const FieldPtr& field() const { return parts.at(0).field(); }
    int v() const { return parts.at(0).v(); }
    int k() const { return parts.at(0).k(); }
    /// [v - t, k - t]_q / N
    BigCount lambda() const;
};

struct VerifyReport {
    bool ok = false;
    std::string message;
    /// A t-subspace whose count differs from the expected value.
    std::optional<Subspace> witness;
    std::uint64_t witness_count = 0;
    std::uint64_t blocks = 0;
    std::uint64_t t_subspaces = 0;
};

VerifyReport verify_design(const SubspaceDesign& d, unsigned threads = 0);
/// Checks that the parts partition the Grassmannian and each part is a design with lambda().
VerifyReport verify_large_set(const LargeSet& ls, unsigned threads = 0);

/// A t-subspace with lambda(T, a) != lambda(T, b), if any.
std::optional<Subspace> t_equivalence_witness(const BlockSet& a, const BlockSet& b, int t);
bool is_t_equivalent(const BlockSet& a, const BlockSet& b, int t);

/// N divides [v - i, k - i]_q for all 0 <= i <= t.
bool admissible(unsigned q, const BigCount& N, int t, int k, int v);

/// Blockwise orthogonal complements.
BlockSet dual(const BlockSet& blocks);
/// The k-subspaces not in `d`, with lambda' = [v - t, k - t]_q - lambda.
SubspaceDesign supplementary(const SubspaceDesign& d);

enum class TransformKind { Dual, Reduced, Derived, Residual, Merge };
TransformKind parse_transform_kind(const std::string& name);
std::string to_string(TransformKind kind);

/// Derived blocks through P = <e_v>, taken modulo P: k-1 subspaces of GF(q)^(v-1).
BlockSet derived(const BlockSet& blocks);
/// Residual blocks inside H = {x_1 = 0}: k subspaces of GF(q)^(v-1).
BlockSet residual(const BlockSet& blocks);

/// Applies a parameter-changing construction; `d` is the merge target (d | N).
LargeSet transform(const LargeSet& ls, TransformKind kind, int d = 0);

/// LS[N](0, k, v): the enumeration stream cut into N consecutive slices of equal size.
LargeSet trivial_large_set(const FieldPtr& field, int N, int k, int v);

}  // namespace qdesign

#endif  // QDESIGN_DESIGN_HPP
