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

#ifndef QDESIGN_JOINS_HPP
#define QDESIGN_JOINS_HPP

#include <functional>
#include <string>
#include <vector>

#include "qdesign/grassmann.hpp"

namespace qdesign {

enum class JoinKind { Ordinary, Covering, Avoiding };

std::string to_string(JoinKind kind);

/**
 * A join cell over the standard flag V_{u1} <= V_{u2} of GF(q)^v.
 *
 * Left operands K1 are k1-subspaces of V_{u1}; right operands are k2bar-subspaces
 * of V / V_{u2}, i.e. subspaces K2 >= V_{u2} of dimension u2 + k2bar.
 * Ordinary joins have u1 == u2.
 */
struct JoinSpec {
    JoinKind kind = JoinKind::Ordinary;
    int v = 0;
    int u1 = 0, u2 = 0;
    int k1 = 0, k2bar = 0;

    int f() const noexcept { return u2 - u1; }
    /// Dimension of every member.
    int k() const noexcept { return k1 + k2bar + (kind == JoinKind::Covering ? f() : 0); }
    /// Exponent e with |K1 * K2/U2| = q^e.
    int size_exponent() const noexcept;
    /// Throws Error when the parameters are inconsistent.
    void validate() const;

    friend bool operator==(const JoinSpec&, const JoinSpec&) = default;
};

std::string to_string(const JoinSpec& spec);

/// q^e, the number of members of a single join K1 * K2/U2.
BigCount join_size(const JoinSpec& spec, unsigned q);

/// Visits every member of K1 * K2/U2 by filling the free blocks of the canonical-matrix
/// template in lexicographic order. K1 <= V_{u1}, K2 >= V_{u2}, both in GF(q)^v.
void join_for_each(const Subspace& k1, const Subspace& k2, const JoinSpec& spec,
                   const std::function<bool(const Subspace&)>& visit);
std::vector<Subspace> join_enumerate(const Subspace& k1, const Subspace& k2, const JoinSpec& spec);

/// Defining conditions of the join, for arbitrary nested U1 <= U2 (equal for ordinary joins).
bool join_member(const Subspace& k, const Subspace& k1, const Subspace& k2, const Subspace& u1, const Subspace& u2,
                 JoinKind kind);
/// Same, for the standard flag of `spec`.
bool join_member(const Subspace& k, const Subspace& k1, const Subspace& k2, const JoinSpec& spec);

/// Number of members of the ordinary join K1 *_U K2/U containing T:
/// q^((u - k1)(k2bar - r)) if U ∩ T <= K1 and T <= K2, else 0, where r = dim((U + T) / U).
BigCount lambda_of_join(const Subspace& t, const Subspace& k1, const Subspace& k2, const Subspace& u);

/// Union of the joins over all pairs; members of `left` lie in V_{u1}, members of
/// `right` contain V_{u2} (preimages of quotient subspaces). Output sorted.
std::vector<Subspace> set_join(const std::vector<Subspace>& left, const std::vector<Subspace>& right,
                               const JoinSpec& spec);

/// The same join expressed as an ordinary join: a covering join is ordinary with respect
/// to V_{u1}, an avoiding join is ordinary with respect to V_{u2}.
JoinSpec as_ordinary(const JoinSpec& spec);

}  // namespace qdesign

#endif  // QDESIGN_JOINS_HPP
