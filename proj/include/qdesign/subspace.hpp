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

#ifndef QDESIGN_SUBSPACE_HPP
#define QDESIGN_SUBSPACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdesign/field.hpp"

namespace qdesign {

using Element = GaloisField::Element;

/// Dense matrix over GF(q), row-major.
class MatGF {
   public:
    MatGF() = default;
    MatGF(FieldPtr field, int rows, int cols);

    static MatGF identity(FieldPtr field, int n);
    static MatGF from_rows(FieldPtr field, const std::vector<std::vector<unsigned>>& rows);

    const FieldPtr& field() const noexcept { return field_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    Element at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, unsigned x);
    const Element* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }
    Element* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
    const std::vector<Element>& data() const noexcept { return data_; }

    MatGF transpose() const;
    /// Throws Error when singular.
    MatGF inverse() const;
    MatGF pow(std::uint64_t e) const;
    int rank() const;

    friend MatGF operator*(const MatGF& a, const MatGF& b);
    friend bool operator==(const MatGF& a, const MatGF& b);

    std::string to_string() const;

   private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<Element> data_;
};

namespace detail {

/// In-place reduced row echelon form of a rows x cols block. Zero rows are moved
/// to the bottom. Pivot columns are written to `pivots` (may be null). Returns the rank.
int rref(const GaloisField& f, Element* data, int rows, int cols, int* pivots = nullptr);

}  // namespace detail

/**
 * Subspace of GF(q)^v, held as its canonical matrix (reduced row echelon form).
 * Pivot positions are 0-based.
 */
class Subspace {
   public:
    Subspace() = default;

    static Subspace zero(FieldPtr field, int v);
    static Subspace full(FieldPtr field, int v);
    /// V_i: span of the last i standard basis vectors.
    static Subspace chain(FieldPtr field, int v, int i);
    /// Row space of `rows` (any generating set).
    static Subspace span(const MatGF& rows);
    /// Wraps entries already known to be canonical; checked, throws naming the first bad row.
    static Subspace from_canonical(FieldPtr field, int v, int k, std::vector<Element> entries);
    /// Wraps entries without checking. Callers guarantee canonical form.
    static Subspace trusted(FieldPtr field, int v, int k, std::vector<Element> entries);

    const FieldPtr& field() const noexcept { return field_; }
    int v() const noexcept { return v_; }
    int dim() const noexcept { return k_; }
    Element at(int i, int j) const { return cm_[static_cast<size_t>(i) * v_ + j]; }
    const Element* row(int i) const { return cm_.data() + static_cast<size_t>(i) * v_; }
    const std::vector<Element>& entries() const noexcept { return cm_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }
    MatGF matrix() const;

    bool contains_vector(const Element* x) const;
    /// this >= other
    bool contains(const Subspace& other) const;

    /// Bytes uniquely identifying the subspace (v, k, entries).
    std::string key() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.v_ == b.v_ && a.k_ == b.k_ && a.cm_ == b.cm_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
    /// Order by dimension, then lexicographically on the canonical matrix.
    friend bool operator<(const Subspace& a, const Subspace& b);

    std::string to_string() const;

   private:
    Subspace(FieldPtr field, int v, int k, std::vector<Element> entries);

    FieldPtr field_;
    int v_ = 0, k_ = 0;
    std::vector<Element> cm_;
    std::vector<int> pivots_;
};

/// Canonical form of the row space of `generators`.
inline Subspace canonicalize(const MatGF& generators) { return Subspace::span(generators); }

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Orthogonal complement under the standard dot product, read off the canonical matrix.
Subspace dual(const Subspace& a);
/// Same result computed as the kernel of the canonical matrix.
Subspace dual_by_kernel(const Subspace& a);

/// Image under the coordinate reversion (x_1, ..., x_v) -> (x_v, ..., x_1).
Subspace reverse_coordinates(const Subspace& a);

/// Image of the row space under x -> x * m.
Subspace apply(const Subspace& a, const MatGF& m);

/// U ∩ V_i from the block form of the canonical matrix.
Subspace meet_with_chain(const Subspace& u, int i);
/// U + V_i from the block form of the canonical matrix.
Subspace join_with_chain(const Subspace& u, int i);

/// Flag V_i <= V_j of the standard chain.
struct StandardFlag {
    int i = 0, j = 0;
};

/// U1 + K = U2 + K; requires U1 <= U2.
bool covers(const Subspace& k, const Subspace& u1, const Subspace& u2);
/// U1 ∩ K = U2 ∩ K; requires U1 <= U2.
bool avoids(const Subspace& k, const Subspace& u1, const Subspace& u2);
/// Pivot-set form for a standard flag: covers iff the columns of V_j not in V_i are all pivots.
bool covers(const Subspace& k, StandardFlag flag);
/// Pivot-set form for a standard flag: avoids iff none of those columns is a pivot.
bool avoids(const Subspace& k, StandardFlag flag);

/// For U <= V_i: the same subspace in coordinates of V_i (last i columns).
Subspace restrict_to_chain(const Subspace& u, int i);
/// Inverse of restrict_to_chain: pads `u` with v - u.v() leading zero columns.
Subspace embed_into_chain(const Subspace& u, int v);
/// For W >= V_i: W / V_i in coordinates of V / V_i (first v - i columns).
Subspace quotient_by_chain(const Subspace& w, int i);
/// Inverse of quotient_by_chain: preimage of `q` under V -> V / V_i.
Subspace lift_from_quotient(const Subspace& q, int i);

}  // namespace qdesign

#endif  // QDESIGN_SUBSPACE_HPP
