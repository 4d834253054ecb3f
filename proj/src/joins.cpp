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

#include "qdesign/joins.hpp"

#include <algorithm>

namespace qdesign {

std::string to_string(JoinKind kind) {
    switch (kind) {
        case JoinKind::Ordinary: return "ordinary";
        case JoinKind::Covering: return "covering";
        case JoinKind::Avoiding: return "avoiding";
    }
    return "?";
}

int JoinSpec::size_exponent() const noexcept {
    switch (kind) {
        case JoinKind::Ordinary: return (u1 - k1) * k2bar;
        case JoinKind::Covering: return (u1 - k1) * (k2bar + f());
        case JoinKind::Avoiding: return (u2 - k1) * k2bar;
    }
    return 0;
}

void JoinSpec::validate() const {
    if (!(0 <= k1 && k1 <= u1 && u1 <= u2 && u2 + k2bar <= v && k2bar >= 0))
        throw Error("invalid join parameters: need 0 <= k1 <= u1 <= u2 <= u2 + k2bar <= v, got " + to_string(*this));
    if (kind == JoinKind::Ordinary && u1 != u2) throw Error("ordinary join requires u1 == u2");
}

std::string to_string(const JoinSpec& spec) {
    return to_string(spec.kind) + "(v=" + std::to_string(spec.v) + " u1=" + std::to_string(spec.u1) +
           " u2=" + std::to_string(spec.u2) + " k1=" + std::to_string(spec.k1) +
           " k2bar=" + std::to_string(spec.k2bar) + ")";
}

BigCount join_size(const JoinSpec& spec, unsigned q) {
    spec.validate();
    return big_pow(q, spec.size_exponent());
}

namespace {

void check_operands(const Subspace& k1, const Subspace& k2, const JoinSpec& spec) {
    spec.validate();
    if (k1.v() != spec.v || k2.v() != spec.v) throw Error("join operand ambient dimension differs from the join parameters");
    if (k1.dim() != spec.k1) throw Error("left join operand has the wrong dimension");
    if (k2.dim() != spec.u2 + spec.k2bar) throw Error("right join operand has the wrong dimension");
    if (!Subspace::chain(k1.field(), spec.v, spec.u1).contains(k1))
        throw Error("left join operand is not contained in V_" + std::to_string(spec.u1));
    if (!k2.contains(Subspace::chain(k2.field(), spec.v, spec.u2)))
        throw Error("right join operand does not contain V_" + std::to_string(spec.u2));
}

}  // namespace

void join_for_each(const Subspace& k1, const Subspace& k2, const JoinSpec& spec,
                   const std::function<bool(const Subspace&)>& visit) {
    check_operands(k1, k2, spec);
    const auto& field = k1.field();
    const unsigned q = field->q();
    const int v = spec.v, u1 = spec.u1, u2 = spec.u2, f = spec.f();
    const Subspace a2 = quotient_by_chain(k2, u2);  // k2bar x (v - u2)
    const bool cover = spec.kind == JoinKind::Covering;
    const int top = spec.k2bar, mid = cover ? f : 0, k = spec.k();

    // Template rows: A2 block, then E_f (covering only), then K1 itself.
    std::vector<Element> cm(static_cast<size_t>(k) * v, 0);
    for (int r = 0; r < top; ++r) std::copy(a2.row(r), a2.row(r) + (v - u2), cm.begin() + static_cast<size_t>(r) * v);
    for (int r = 0; r < mid; ++r) cm[static_cast<size_t>(top + r) * v + (v - u2 + r)] = 1;
    for (int r = 0; r < spec.k1; ++r)
        std::copy(k1.row(r), k1.row(r) + v, cm.begin() + static_cast<size_t>(top + mid + r) * v);

    std::vector<bool> k1_pivot(v, false);
    for (int p : k1.pivots()) k1_pivot[p] = true;

    // Free positions in row-major order.
    std::vector<size_t> free;
    for (int r = 0; r < top + mid; ++r) {
        // middle columns: arbitrary for avoiding joins on A2 rows, fixed otherwise
        if (spec.kind == JoinKind::Avoiding)
            for (int c = v - u2; c < v - u1; ++c) free.push_back(static_cast<size_t>(r) * v + c);
        for (int c = v - u1; c < v; ++c)
            if (!k1_pivot[c]) free.push_back(static_cast<size_t>(r) * v + c);
    }

    // Odometer over q^|free| fillings, last position fastest.
    std::vector<Element> digits(free.size(), 0);
    while (true) {
        for (size_t i = 0; i < free.size(); ++i) cm[free[i]] = digits[i];
        if (!visit(Subspace::trusted(field, v, k, cm))) return;
        int i = static_cast<int>(free.size()) - 1;
        while (i >= 0 && digits[i] == q - 1) digits[i--] = 0;
        if (i < 0) return;
        ++digits[i];
    }
}

std::vector<Subspace> join_enumerate(const Subspace& k1, const Subspace& k2, const JoinSpec& spec) {
    std::vector<Subspace> out;
    join_for_each(k1, k2, spec, [&](const Subspace& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

bool join_member(const Subspace& k, const Subspace& k1, const Subspace& k2, const Subspace& u1, const Subspace& u2,
                 JoinKind kind) {
    if (!u2.contains(u1)) throw Error("join flag is not nested");
    if (kind == JoinKind::Ordinary && u1 != u2) throw Error("ordinary join requires U1 == U2");
    if (intersect(u1, k) != k1) return false;
    if (sum(u2, k) != k2) return false;
    switch (kind) {
        case JoinKind::Ordinary: return true;
        case JoinKind::Covering: return covers(k, u1, u2);
        case JoinKind::Avoiding: return avoids(k, u1, u2);
    }
    return false;
}

bool join_member(const Subspace& k, const Subspace& k1, const Subspace& k2, const JoinSpec& spec) {
    spec.validate();
    const auto& field = k.field();
    return join_member(k, k1, k2, Subspace::chain(field, spec.v, spec.u1), Subspace::chain(field, spec.v, spec.u2),
                       spec.kind);
}

BigCount lambda_of_join(const Subspace& t, const Subspace& k1, const Subspace& k2, const Subspace& u) {
    if (!u.contains(k1) || !k2.contains(u)) throw Error("lambda_of_join requires K1 <= U <= K2");
    if (!k2.contains(t)) return 0;
    const Subspace ut = intersect(u, t);
    if (!k1.contains(ut)) return 0;
    const int r = t.dim() - ut.dim();  // dim((U + T) / U)
    const int k2bar = k2.dim() - u.dim();
    return big_pow(u.field()->q(), (u.dim() - k1.dim()) * (k2bar - r));
}

std::vector<Subspace> set_join(const std::vector<Subspace>& left, const std::vector<Subspace>& right,
                               const JoinSpec& spec) {
    std::vector<Subspace> out;
    for (const auto& a : left)
        for (const auto& b : right) join_for_each(a, b, spec, [&](const Subspace& s) {
                out.push_back(s);
                return true;
            });
    std::sort(out.begin(), out.end());
    return out;
}

JoinSpec as_ordinary(const JoinSpec& spec) {
    spec.validate();
    JoinSpec o = spec;
    o.kind = JoinKind::Ordinary;
    switch (spec.kind) {
        case JoinKind::Ordinary: break;
        case JoinKind::Covering:
            o.u2 = spec.u1;
            o.k2bar = spec.k2bar + spec.f();
            break;
        case JoinKind::Avoiding: o.u1 = spec.u2; break;
    }
    return o;
}

}  // namespace qdesign
