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

#include "qdesign/bundled.hpp"

namespace qdesign {

namespace {

// Orbit representatives of a 2-(6,3,78)_5 design invariant under <s^2, f>.
const std::vector<std::array<std::uint64_t, 3>> kQ5Selection = {
    {3221, 728, 155},
    {3133, 898, 32},
    {3144, 132, 49},
    {627, 136, 49},
    {3202, 631, 146},
    {3248, 749, 246},
    {3157, 662, 229},
    {3265, 1125, 44},
    {3224, 637, 145},
    {3139, 647, 41},
    {3643, 771, 45},
    {3226, 739, 239},
    {3383, 1136, 43},
    {3263, 756, 45},
    {3224, 714, 205},
    {3167, 629, 129},
    {3174, 701, 242},
    {3221, 728, 182},
    {3151, 639, 132},
    {3207, 641, 247},
    {3220, 635, 202},
    {3173, 736, 166},
    {5629, 146, 38},
    {3643, 1017, 26},
    {3190, 639, 206},
    {3227, 670, 157},
    {3246, 720, 210},
    {3127, 137, 35},
    {3262, 758, 27},
    {3143, 749, 225},
    {3232, 659, 198},
    {3134, 731, 162},
    {3209, 672, 165},
    {3236, 633, 219},
    {3194, 748, 211},
    {3229, 669, 179},
    {3381, 878, 35},
    {3236, 698, 246},
    {3157, 747, 138},
    {3150, 659, 194},
    {3233, 719, 223},
    {3228, 663, 164},
    {3207, 661, 237},
    {4392, 144, 44},
    {3130, 774, 26},
    {3169, 642, 246},
    {5012, 141, 41},
    {3181, 745, 232},
    {3220, 717, 148},
    {3131, 718, 167},
    {3233, 680, 196},
    {3182, 702, 181},
    {3649, 1138, 41},
    {3186, 629, 161},
    {3147, 715, 218},
    {3156, 686, 198},
    {3645, 641, 44},
    {3510, 880, 1},
    {3500, 636, 29},
    {3244, 647, 129},
    {3231, 699, 203},
    {3226, 717, 228},
    {3638, 1014, 38},
    {3147, 696, 143},
    {3245, 639, 197},
    {3246, 718, 222},
    {3140, 143, 31},
    {3173, 669, 190},
    {3221, 719, 161},
    {5000, 131, 42},
    {3513, 1145, 32},
    {3170, 721, 241},
    {3199, 714, 157},
    {3232, 685, 201},
    {3203, 644, 232},
    {3223, 649, 218},
    {3176, 677, 5},
    {3167, 656, 228},
    {3145, 888, 36},
    {3509, 629, 33},
    {3232, 694, 134},
    {3211, 660, 207},
    {3727, 1100, 8},
    {3376, 954, 5},
    {3274, 752, 48},
    {3137, 670, 214},
    {3201, 647, 210},
    {3209, 644, 180},
    {3132, 697, 160},
    {3175, 628, 160},
    {3154, 1000, 9},
    {3233, 745, 159},
    {3396, 1012, 48},
    {3140, 631, 224},
    {3153, 677, 171},
    {3149, 718, 221},
    {3380, 1139, 27},
    {3146, 665, 242},
    {3238, 721, 206},
    {3225, 703, 182},
    {3163, 733, 249},
    {3227, 711, 139},
    {3204, 704, 204},
    {3201, 738, 163},
    {3174, 725, 152},
    {3225, 648, 223},
    {3192, 667, 173},
    {3140, 684, 140},
    {3643, 1015, 46},
    {3141, 636, 249},
    {3166, 667, 202},
    {3230, 734, 130},
    {3160, 722, 218},
    {3188, 675, 170},
    {3219, 681, 197},
    {3212, 662, 167},
    {3230, 635, 210},
    {3165, 715, 177},
    {3627, 627, 6},
    {3187, 711, 125},
    {3478, 803, 8},
    {3231, 748, 223},
    {3131, 690, 192},
    {3222, 625, 148},
    {3504, 1003, 32},
    {3242, 714, 226},
};

BundledInstance make_q3() {
    BundledInstance b;
    b.name = "q3";
    b.q = 3;
    b.v = 6;
    b.t = 2;
    b.k = 3;
    b.lambda = 20;
    b.polynomial = "1,0,2,0,1,2,2";
    b.group = "s^2,f^2";
    b.normalizer = "s,f";
    b.overgroups = {"s,f^2", "s^2,f", "s^2,sf,f^2", "s,f"};
    b.order = 546;
    b.orbit_profile = {{14, 2}, {182, 18}, {546, 56}};
    b.blocks = 16940;
    b.solution_count = 229100;
    b.isotypes = 57275;
    b.sigma_rows = {{0, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 2},
                    {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 1, 0}};
    b.phi_rows = {{1, 0, 1, 0, 0, 1}, {0, 0, 1, 1, 1, 2}, {0, 0, 2, 1, 1, 2},
                  {0, 1, 0, 0, 2, 1}, {0, 0, 1, 1, 1, 0}, {0, 0, 0, 0, 2, 2}};
    return b;
}

BundledInstance make_q5() {
    BundledInstance b;
    b.name = "q5";
    b.q = 5;
    b.v = 6;
    b.t = 2;
    b.k = 3;
    b.lambda = 78;
    b.polynomial = "1,0,1,4,1,0,2";
    b.group = "s^2,f";
    b.normalizer = "s,f";
    b.overgroups = {"s,f"};
    b.order = 11718;
    b.orbit_profile = {{63, 2}, {1953, 2}, {3906, 24}, {5859, 20}, {11718, 200}};
    b.blocks = 1279278;
    b.sigma_rows = {{0, 0, 0, 0, 0, 3}, {1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 4},
                    {0, 0, 1, 0, 0, 1}, {0, 0, 0, 1, 0, 4}, {0, 0, 0, 0, 1, 0}};
    b.phi_rows = {{1, 0, 0, 2, 0, 4}, {0, 0, 3, 0, 3, 4}, {0, 0, 2, 4, 4, 0},
                  {0, 0, 4, 4, 1, 3}, {0, 0, 0, 4, 1, 4}, {0, 1, 3, 1, 0, 2}};
    b.selection = kQ5Selection;
    return b;
}

}  // namespace

std::vector<MatGF> BundledInstance::generators(const std::string& word_spec) const {
    const auto poly = primitive_polynomial();
    return parse_word_spec(word_spec, singer_matrix(poly), frobenius_matrix(poly));
}

std::vector<std::vector<std::uint64_t>> BundledInstance::selection_codes() const {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& s : selection) out.emplace_back(s.begin(), s.end());
    return out;
}

const BundledInstance& bundled_instance(const std::string& name) {
    static const BundledInstance q3 = make_q3();
    static const BundledInstance q5 = make_q5();
    if (name == "q3") return q3;
    if (name == "q5") return q5;
    throw Error("unknown bundled instance '" + name + "' (expected q3 or q5)");
}

std::vector<std::string> bundled_names() { return {"q3", "q5"}; }

LargeSet bundled_halving(const BundledInstance& inst, SubspaceDesign* design) {
    ProjectiveGroup g(inst.generators(inst.group));
    KMInstance km(g, inst.t, inst.k, inst.lambda);
    std::vector<std::size_t> sel;
    if (!inst.selection.empty()) {
        sel = selection_from_codes(km, inst.selection_codes());
    } else {
        auto r = km_solve(km, SolveMode::First, 0, {}, SolverStrategy::Lattice);
        if (r.solutions.empty()) throw Error("no G-invariant design found for " + inst.name);
        sel = r.solutions.front();
    }
    SubspaceDesign d = assemble_design(km, sel);
    LargeSet ls;
    ls.t = inst.t;
    ls.parts = {d.blocks, d.blocks.complement()};
    if (design) *design = std::move(d);
    return ls;
}

std::vector<HalvingRow> smallest_halvings() {
    std::vector<HalvingRow> rows;
    for (unsigned q : {3u, 5u}) {
        for (int v : {6, 10, 14}) {
            for (int k = 3; 2 * k <= v; k += 4) {
                HalvingRow r;
                r.q = q;
                r.v = v;
                r.ks = {k};
                if (v - k != k) r.ks.push_back(v - k);
                r.lambda = gaussian_binomial(v - 2, k - 2, q) / 2;
                r.size = gaussian_binomial(v, k, q) / 2;
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

bool realized_by_series(int k, int v) {
    if (v < 6 || v % 4 != 2 || k < 3 || k > v - 3) return false;
    return k % 4 == 3 || (v - k) % 4 == 3;
}

std::vector<std::pair<int, std::vector<std::string>>> admissibility_table(unsigned q, int v_min, int v_max) {
    std::vector<std::pair<int, std::vector<std::string>>> out;
    for (int v = v_min; v <= v_max; ++v) {
        std::vector<std::string> row;
        for (int k = 3; 2 * k <= v; ++k) {
            if (!admissible(q, 2, 2, k, v))
                row.push_back("-");
            else if (realized_by_series(k, v))
                row.push_back(std::to_string(k));
            else
                row.push_back("?");
        }
        out.emplace_back(v, std::move(row));
    }
    return out;
}

}  // namespace qdesign
