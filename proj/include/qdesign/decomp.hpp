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

#ifndef QDESIGN_DECOMP_HPP
#define QDESIGN_DECOMP_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdesign/joins.hpp"

namespace qdesign {

enum class DecompositionKind { QPascal, Vandermonde, Avoid, Cover };

std::string to_string(DecompositionKind kind);
DecompositionKind parse_decomposition_kind(const std::string& name);

/// One cell [V_{u1}, k1] * [V / V_{u2}, k2bar] of a decomposition.
struct Cell {
    JoinSpec spec;
    /// Index i of the generating sum.
    int index = 0;
    /// False for Vandermonde terms outside max(0, k+u-v) <= i <= min(u, k).
    bool nonempty = true;

    /// [u1, k1]_q * q^e * [v - u2, k2bar]_q
    BigCount size(unsigned q) const;
};

struct DecompositionPlan {
    DecompositionKind kind;
    int v = 0, k = 0;
    unsigned q = 2;
    /// u for Vandermonde, s for Avoid/Cover, unused for QPascal.
    int param = 0;
    std::vector<Cell> cells;

    std::string describe() const;
};

/// Cells over the standard chain; throws Error quoting the valid range for bad parameters.
DecompositionPlan make_decomposition(DecompositionKind kind, int v, int k, unsigned q, int param = 0);

struct IdentityCheck {
    BigCount lhs, rhs;
    bool holds() const { return lhs == rhs; }
};

/// lhs = [v, k]_q, rhs = sum of cell sizes.
IdentityCheck verify_identity(const DecompositionPlan& plan);

struct PartitionReport {
    std::vector<std::uint64_t> cell_counts;
    std::uint64_t total = 0;
};

/// Enumerates every cell and checks that the cells cover [V, k]_q exactly once.
/// Throws Error carrying a witness subspace on overlap or gap.
PartitionReport verify_partition(const DecompositionPlan& plan);

/// Visits every member of a cell.
void cell_for_each(const FieldPtr& field, const Cell& cell, const std::function<bool(const Subspace&)>& visit);

}  // namespace qdesign

#endif  // QDESIGN_DECOMP_HPP
