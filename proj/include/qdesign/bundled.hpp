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

#ifndef QDESIGN_BUNDLED_HPP
#define QDESIGN_BUNDLED_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qdesign/km.hpp"

namespace qdesign {

/// A prescribed-automorphism search for a 2-(6, 3, lambda)_q halving, with its published data.
struct BundledInstance {
    std::string name;
    unsigned q = 0;
    int v = 0, t = 0, k = 0;
    std::uint64_t lambda = 0;
    /// Leading coefficient first.
    std::string polynomial;
    /// Generators of the prescribed group G.
    std::string group;
    /// Normalizer of G used for isomorphism counting, and the overgroups between G and it.
    std::string normalizer;
    std::vector<std::string> overgroups;
    std::uint64_t order = 0;
    std::map<std::uint64_t, std::size_t> orbit_profile;
    std::uint64_t blocks = 0;
    /// 0 when not recorded.
    std::uint64_t solution_count = 0;
    std::uint64_t isotypes = 0;
    /// Matrices of x -> alpha x and x -> x^q as printed.
    std::vector<std::vector<unsigned>> sigma_rows, phi_rows;
    /// Orbit representatives of a known solution, one row code per entry (empty if none).
    std::vector<std::array<std::uint64_t, 3>> selection;

    FieldPtr field() const { return GaloisField::make(q); }
    PrimitivePolynomial primitive_polynomial() const { return PrimitivePolynomial::parse(field(), polynomial); }
    std::vector<MatGF> generators(const std::string& word_spec) const;
    std::vector<std::vector<std::uint64_t>> selection_codes() const;
};

/// "q3" or "q5".
const BundledInstance& bundled_instance(const std::string& name);
std::vector<std::string> bundled_names();

/**
 * The halving LS_q[2](2, 3, 6) of a bundled instance: a G-invariant design and its complement.
 * Uses the published selection when present, else the first lattice solution.
 */
LargeSet bundled_halving(const BundledInstance& inst, SubspaceDesign* design = nullptr);

struct HalvingRow {
    unsigned q = 0;
    int v = 0;
    /// k and its dual v - k (once if equal).
    std::vector<int> ks;
    BigCount lambda;
    BigCount size;
};

/// Halvings LS_q[2](2, k, v) with q in {3, 5}, v in {6, 10, 14}, k = 3 mod 4, k <= v/2.
/// lambda = [v-2, k-2]_q / 2 for the smaller k; size = [v, k]_q / 2.
std::vector<HalvingRow> smallest_halvings();

/// Entries for LS_q[2](2, k, v), 3 <= k <= v/2: "-" not admissible, the value of k when the
/// recursive series realizes it, "?" otherwise.
std::vector<std::pair<int, std::vector<std::string>>> admissibility_table(unsigned q, int v_min, int v_max);

/// v = 2 mod 4, 3 <= k <= v - 3 and k or v - k = 3 mod 4.
bool realized_by_series(int k, int v);

}  // namespace qdesign

#endif  // QDESIGN_BUNDLED_HPP
