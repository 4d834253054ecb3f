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

#ifndef QDESIGN_GRASSMANN_HPP
#define QDESIGN_GRASSMANN_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qdesign/subspace.hpp"

namespace qdesign {

using BigCount = boost::multiprecision::cpp_int;

/// Gaussian binomial [v, k]_q; zero when k < 0 or k > v.
BigCount gaussian_binomial(int v, int k, unsigned q);
/// Same value in 64 bits; throws Error on overflow.
std::uint64_t gaussian_binomial_u64(int v, int k, unsigned q);

BigCount big_pow(unsigned base, unsigned exp);
/// base^exp in 64 bits; throws Error on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

/// One step of a q-grid path: a vertical step, or a horizontal step labelled by a vector of length y.
struct PathStep {
    bool vertical = false;
    std::vector<Element> label;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Column-wise description of a canonical matrix: step j describes column j.
struct GridPath {
    std::vector<PathStep> steps;

    /// Number of vertical steps.
    int height() const;
    friend bool operator==(const GridPath&, const GridPath&) = default;
};

Subspace path_to_subspace(FieldPtr field, const GridPath& path);
GridPath subspace_to_path(const Subspace& s);

/// Visits the canonical matrix (k x v, row-major) of every k-subspace of GF(q)^v once,
/// in depth-first order over grid paths: at each column the vertical step comes first,
/// then horizontal labels in increasing order (row 0 most significant).
/// The callback may return false to stop early.
void for_each_canonical(const GaloisField& f, int v, int k, const std::function<bool(const Element*)>& visit);

/// Streams every k-subspace; same order as for_each_canonical.
void for_each_subspace(const FieldPtr& field, int v, int k, const std::function<bool(const Subspace&)>& visit);

/// All k-subspaces as a vector (small cases only).
std::vector<Subspace> grassmannian(const FieldPtr& field, int v, int k);

// ---------------------------------------------------------------------------
// q-adic block codec

/// Row (a_{v-1}, ..., a_0) -> sum a_i q^i: the leftmost entry is the most significant digit.
std::uint64_t encode_row(const Element* row, int v, unsigned q);
void decode_row(std::uint64_t code, int v, unsigned q, Element* row);

std::vector<std::uint64_t> encode_block(const Subspace& s);
/// Throws Error naming the offending row when the codes do not form a canonical matrix.
Subspace decode_block(const FieldPtr& field, int v, const std::vector<std::uint64_t>& codes);

/// Mixed-radix packing of all row codes (first row most significant); numeric order
/// equals lexicographic order of the code tuple. Requires q^(v*k) < 2^128.
using PackedKey = unsigned __int128;

PackedKey pack_canonical(const Element* cm, int k, int v, unsigned q);
PackedKey pack(const Subspace& s);
void unpack_canonical(PackedKey key, int k, int v, unsigned q, Element* cm);
Subspace unpack(const FieldPtr& field, int v, int k, PackedKey key);
/// Whether the packed key of a k-subspace of GF(q)^v fits in 128 bits.
bool packable(int v, int k, unsigned q);

/// Sorted index of every k-subspace of GF(q)^v by packed key.
class SubspaceIndex {
   public:
    SubspaceIndex(FieldPtr field, int v, int k);

    const FieldPtr& field() const noexcept { return field_; }
    int v() const noexcept { return v_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return keys_.size(); }

    /// Position of `key`, or -1 if absent.
    std::int64_t find(PackedKey key) const;
    std::int64_t find(const Subspace& s) const { return find(pack(s)); }
    PackedKey key_at(std::size_t i) const { return keys_[i]; }
    Subspace subspace_at(std::size_t i) const { return unpack(field_, v_, k_, keys_[i]); }
    const std::vector<PackedKey>& keys() const noexcept { return keys_; }

   private:
    FieldPtr field_;
    int v_, k_;
    std::vector<PackedKey> keys_;
};

/// Canonical matrices (t x k) of all t-subspaces of GF(q)^k, flattened.
/// Multiplying one by the canonical matrix of a k-subspace B gives the canonical matrix
/// of a t-subspace of B directly (no further reduction needed).
std::vector<Element> coefficient_patterns(const GaloisField& f, int k, int t);

/// Canonical matrix of C * B for a coefficient pattern C (t x k) and canonical B (k x v).
void combine_rows(const GaloisField& f, const Element* c, int t, int k, const Element* b, int v, Element* out);

}  // namespace qdesign

#endif  // QDESIGN_GRASSMANN_HPP
