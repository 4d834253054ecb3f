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

#ifndef QDESIGN_KM_HPP
#define QDESIGN_KM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdesign/design.hpp"

namespace qdesign {

/**
 * Finite subgroup of PGL(v, q) given by generators.
 * Elements are matrices scaled so that the first nonzero entry (row-major) is 1.
 */
class ProjectiveGroup {
   public:
    /// BFS closure; throws Error on a singular or mis-sized generator.
    explicit ProjectiveGroup(std::vector<MatGF> generators);

    const FieldPtr& field() const noexcept { return field_; }
    int v() const noexcept { return v_; }
    const std::vector<MatGF>& generators() const noexcept { return generators_; }
    std::uint64_t order() const noexcept { return elements_.size(); }
    const std::vector<MatGF>& elements() const noexcept { return elements_; }

    bool contains(const MatGF& m) const;

    static MatGF normalize(const MatGF& m);

   private:
    FieldPtr field_;
    int v_;
    std::vector<MatGF> generators_;
    std::vector<MatGF> elements_;
    std::map<std::vector<Element>, std::size_t> lookup_;
};

/// Right action x -> x * m on row vectors; the canonical form of the image.
Subspace act(const Subspace& s, const MatGF& m);

/**
 * Generators from a word spec over the letters s and f, e.g. "s^2,f^2" or "s^2,sf,f^2".
 * Each comma-separated word is a product of powers; letters map to `sigma` and `phi`.
 * Words multiply left to right in the order written.
 */
std::vector<MatGF> parse_word_spec(const std::string& spec, const MatGF& sigma, const MatGF& phi);

/// Orbits of a group on the d-subspaces of GF(q)^v.
class OrbitTable {
   public:
    OrbitTable(const ProjectiveGroup& group, int d);

    int v() const noexcept { return index_.v(); }
    int d() const noexcept { return index_.k(); }
    const FieldPtr& field() const noexcept { return index_.field(); }
    const SubspaceIndex& index() const noexcept { return index_; }

    std::size_t count() const noexcept { return reps_.size(); }
    /// Lexicographically least canonical matrix in orbit j.
    Subspace representative(std::size_t j) const { return index_.subspace_at(reps_[j]); }
    std::uint64_t size(std::size_t j) const { return sizes_[j]; }
    const std::vector<std::uint64_t>& sizes() const noexcept { return sizes_; }

    /// Orbit id of a d-subspace.
    std::size_t orbit_of(const Subspace& s) const;
    std::size_t orbit_of_position(std::size_t pos) const { return orbit_[pos]; }

    /// Size -> multiplicity.
    std::map<std::uint64_t, std::size_t> profile() const;
    /// e.g. "14^2 182^18 546^56"
    std::string profile_string() const;

   private:
    SubspaceIndex index_;
    std::vector<std::uint32_t> orbit_;
    std::vector<std::size_t> reps_;
    std::vector<std::uint64_t> sizes_;
};

/// Orbit incidence system A x = lambda 1 for G-invariant t-(v, k, lambda)_q designs.
class KMInstance {
   public:
    /// Throws Error if the row or column identity fails.
    KMInstance(const ProjectiveGroup& group, int t, int k, std::uint64_t lambda);

    int t() const noexcept { return t_; }
    int k() const noexcept { return k_; }
    int v() const noexcept { return korbits_.v(); }
    std::uint64_t lambda() const noexcept { return lambda_; }
    std::uint64_t group_order() const noexcept { return group_order_; }
    void set_lambda(std::uint64_t lambda) { lambda_ = lambda; }

    const OrbitTable& t_orbits() const noexcept { return torbits_; }
    const OrbitTable& k_orbits() const noexcept { return korbits_; }

    std::size_t rows() const noexcept { return torbits_.count(); }
    std::size_t cols() const noexcept { return korbits_.count(); }
    /// a_ij = #{K in K_j : T_i <= K}
    std::uint32_t a(std::size_t i, std::size_t j) const { return a_[i * cols() + j]; }
    const std::vector<std::uint32_t>& matrix() const noexcept { return a_; }

   private:
    int t_, k_;
    std::uint64_t lambda_;
    std::uint64_t group_order_;
    OrbitTable torbits_, korbits_;
    std::vector<std::uint32_t> a_;
};

enum class SolverStrategy {
    /// Depth-first search in a fixed column order with row-bound pruning.
    Backtrack,
    /// LLL-reduced solution lattice searched exhaustively for +-1 vectors.
    Lattice,
};
std::string to_string(SolverStrategy s);
SolverStrategy parse_solver_strategy(const std::string& name);

/// Bare 0/1 system A x = b with nonnegative integer entries, rows x cols row-major.
struct ExactSystem {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;
    std::vector<std::uint64_t> b;
    /// Column branching order; empty means 0..cols-1.
    std::vector<std::size_t> order;
    SolverStrategy strategy = SolverStrategy::Backtrack;

    static ExactSystem from_instance(const KMInstance& inst);
};

enum class SolveMode { First, Count, Enumerate };

struct SolveResult {
    /// Selected columns of each solution, ascending (First: at most one; Count: none stored).
    std::vector<std::vector<std::size_t>> solutions;
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    /// The node budget ran out before the search finished.
    bool exhausted = false;
};

/**
 * All x in {0,1}^cols with A x = b. Backtrack walks `order` and prunes when a row sum exceeds b
 * or can no longer reach b; Lattice ignores `order`. Enumerate returns solutions sorted.
 * `budget` caps visited nodes (0 = unlimited). `on_solution` may return false to stop early.
 */
SolveResult solve_exact(const ExactSystem& sys, SolveMode mode, std::uint64_t budget = 0,
                        const std::function<bool(const std::vector<std::size_t>&)>& on_solution = {});

/// Backtracking branches by descending orbit size, then orbit index.
SolveResult km_solve(const KMInstance& inst, SolveMode mode, std::uint64_t budget = 0,
                     const std::function<bool(const std::vector<std::size_t>&)>& on_solution = {},
                     SolverStrategy strategy = SolverStrategy::Backtrack);

struct SelectionReport {
    bool ok = false;
    /// First row with (A x)_i != lambda.
    std::optional<std::size_t> failing_row;
    std::uint64_t failing_value = 0;
    std::uint64_t blocks = 0;
};

SelectionReport verify_selection(const KMInstance& inst, const std::vector<std::size_t>& selection);

/// Union of the selected k-orbits.
SubspaceDesign assemble_design(const KMInstance& inst, const std::vector<std::size_t>& selection);

/// Orbit ids of k-subspaces given as code triples (one row code per entry); sorted, distinct.
std::vector<std::size_t> selection_from_codes(const KMInstance& inst,
                                              const std::vector<std::vector<std::uint64_t>>& codes);

/// One block per line: whitespace, comma or parenthesis separated row codes. '#' starts a comment.
std::vector<std::vector<std::uint64_t>> parse_code_lines(const std::string& text);

struct OvergroupResult {
    std::string word_spec;
    std::uint64_t order = 0;
    std::uint64_t count = 0;
    bool exhausted = false;
};

struct IsotypeReport {
    std::uint64_t solutions = 0;
    std::uint64_t index = 0;
    std::uint64_t isotypes = 0;
    bool exhausted = false;
    std::vector<OvergroupResult> overgroups;
};

/**
 * Counts isomorphism types of G-invariant designs when every proper overgroup of G inside the
 * normalizer N admits none: each N-orbit on solutions then has length [N : G].
 * Throws Error if an overgroup admits a design or [N : G] does not divide the count.
 */
IsotypeReport isomorphism_type_count(const KMInstance& inst, const ProjectiveGroup& normalizer,
                                     const std::vector<std::pair<std::string, std::vector<MatGF>>>& overgroups,
                                     std::uint64_t budget = 0,
                                     SolverStrategy strategy = SolverStrategy::Lattice);

}  // namespace qdesign

#endif  // QDESIGN_KM_HPP
