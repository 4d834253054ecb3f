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

#include "qdesign/decomp.hpp"

#include <sstream>

namespace qdesign {

std::string to_string(DecompositionKind kind) {
    switch (kind) {
        case DecompositionKind::QPascal: return "pascal";
        case DecompositionKind::Vandermonde: return "vandermonde";
        case DecompositionKind::Avoid: return "avoid";
        case DecompositionKind::Cover: return "cover";
    }
    return "?";
}

DecompositionKind parse_decomposition_kind(const std::string& name) {
    if (name == "pascal") return DecompositionKind::QPascal;
    if (name == "vandermonde") return DecompositionKind::Vandermonde;
    if (name == "avoid") return DecompositionKind::Avoid;
    if (name == "cover") return DecompositionKind::Cover;
    throw Error("unknown decomposition kind '" + name + "' (expected pascal, vandermonde, avoid or cover)");
}

BigCount Cell::size(unsigned q) const {
    if (!nonempty) return 0;
    return gaussian_binomial(spec.u1, spec.k1, q) * join_size(spec, q) *
           gaussian_binomial(spec.v - spec.u2, spec.k2bar, q);
}

namespace {
std::string range_error(const std::string& what, int lo, int hi, int got) {
    return what + " must lie in {" + std::to_string(lo) + ", ..., " + std::to_string(hi) + "}, got " +
           std::to_string(got);
}
}  // namespace

DecompositionPlan make_decomposition(DecompositionKind kind, int v, int k, unsigned q, int param) {
    if (v < 0 || k < 0 || k > v) throw Error(range_error("k", 0, v, k));
    prime_power(q);
    DecompositionPlan plan{kind, v, k, q, param, {}};
    switch (kind) {
        case DecompositionKind::QPascal:
            if (k < 1 || k > v - 1) throw Error(range_error("k", 1, v - 1, k));
            plan.cells.push_back({{JoinKind::Covering, v, v - 1, v, k - 1, 0}, 0, true});
            plan.cells.push_back({{JoinKind::Avoiding, v, v - 1, v, k, 0}, 1, true});
            break;
        case DecompositionKind::Vandermonde: {
            const int u = param;
            if (u < 0 || u > v) throw Error(range_error("u", 0, v, u));
            for (int i = 0; i <= k; ++i) {
                bool live = std::max(0, k + u - v) <= i && i <= std::min(u, k);
                JoinSpec spec{JoinKind::Ordinary, v, u, u, i, k - i};
                if (!live) {
                    // keep the nominal parameters; the cell is empty
                    spec.k1 = std::min(i, u);
                    spec.k2bar = std::min(k - i, v - u);
                }
                plan.cells.push_back({spec, i, live});
            }
            break;
        }
        case DecompositionKind::Avoid: {
            const int s = param;
            if (s < 0 || s > v - k - 1) throw Error(range_error("s", 0, v - k - 1, s));
            for (int i = 0; i <= k; ++i) plan.cells.push_back({{JoinKind::Avoiding, v, s + i, s + i + 1, i, k - i}, i, true});
            break;
        }
        case DecompositionKind::Cover: {
            const int s = param;
            if (s < 0 || s > k - 1) throw Error(range_error("s", 0, k - 1, s));
            for (int i = 0; i <= v - k; ++i)
                plan.cells.push_back({{JoinKind::Covering, v, v - s - i - 1, v - s - i, k - s - 1, s}, i, true});
            break;
        }
    }
    return plan;
}

std::string DecompositionPlan::describe() const {
    std::ostringstream out;
    out << to_string(kind) << " decomposition of [" << v << "," << k << "]_" << q;
    if (kind == DecompositionKind::Vandermonde) out << " u=" << param;
    if (kind == DecompositionKind::Avoid || kind == DecompositionKind::Cover) out << " s=" << param;
    out << "\n";
    for (const auto& c : cells) {
        const auto& s = c.spec;
        out << "  i=" << c.index << "  ";
        if (!c.nonempty) {
            out << "(empty)\n";
            continue;
        }
        out << "q^" << s.size_exponent() << " [" << s.u1 << "," << s.k1 << "] * [" << (v - s.u2) << "," << s.k2bar
            << "]  " << to_string(s.kind) << " u1=" << s.u1 << " u2=" << s.u2 << "  size " << c.size(q) << "\n";
    }
    return out.str();
}

IdentityCheck verify_identity(const DecompositionPlan& plan) {
    IdentityCheck check{gaussian_binomial(plan.v, plan.k, plan.q), 0};
    for (const auto& c : plan.cells) check.rhs += c.size(plan.q);
    if (!check.holds())
        throw Error("counting identity fails for " + to_string(plan.kind) + ": " + check.lhs.str() + " != " +
                    check.rhs.str());
    return check;
}

void cell_for_each(const FieldPtr& field, const Cell& cell, const std::function<bool(const Subspace&)>& visit) {
    if (!cell.nonempty) return;
    const auto& s = cell.spec;
    bool go = true;
    for_each_subspace(field, s.u1, s.k1, [&](const Subspace& a) {
        const Subspace k1 = embed_into_chain(a, s.v);
        for_each_subspace(field, s.v - s.u2, s.k2bar, [&](const Subspace& b) {
            const Subspace k2 = lift_from_quotient(b, s.u2);
            join_for_each(k1, k2, s, [&](const Subspace& x) { return go = visit(x); });
            return go;
        });
        return go;
    });
}

PartitionReport verify_partition(const DecompositionPlan& plan) {
    auto field = GaloisField::make(plan.q);
    SubspaceIndex index(field, plan.v, plan.k);
    std::vector<std::uint8_t> seen(index.size(), 0);
    PartitionReport report;
    for (const auto& c : plan.cells) {
        std::uint64_t n = 0;
        cell_for_each(field, c, [&](const Subspace& x) {
            if (x.dim() != plan.k) throw Error("cell member " + x.to_string() + " has the wrong dimension");
            auto pos = index.find(x);
            if (pos < 0) throw Error("cell member " + x.to_string() + " is not canonical");
            if (seen[pos]) throw Error("cells overlap at " + x.to_string());
            seen[pos] = 1;
            ++n;
            return true;
        });
        if (BigCount(n) != c.size(plan.q))
            throw Error("cell " + std::to_string(c.index) + " has " + std::to_string(n) + " members, expected " +
                        c.size(plan.q).str());
        report.cell_counts.push_back(n);
        report.total += n;
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw Error("no cell contains " + index.subspace_at(i).to_string());
    return report;
}

}  // namespace qdesign
