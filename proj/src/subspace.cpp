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

#include "qdesign/subspace.hpp"

#include <algorithm>
#include <sstream>

namespace qdesign {

namespace {

void require_same(const Subspace& a, const Subspace& b, const char* op) {
    if (a.v() != b.v())
        throw Error(std::string(op) + ": ambient dimensions differ (" + std::to_string(a.v()) + " vs " +
                    std::to_string(b.v()) + ")");
    if (!a.field()->same_as(*b.field())) throw Error(std::string(op) + ": subspaces over different fields");
}

}  // namespace

// ---------------------------------------------------------------------------
// MatGF

MatGF::MatGF(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
}

MatGF MatGF::identity(FieldPtr field, int n) {
    MatGF m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

MatGF MatGF::from_rows(FieldPtr field, const std::vector<std::vector<unsigned>>& rows) {
    int cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    MatGF m(std::move(field), static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw Error("ragged matrix rows");
        for (int j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void MatGF::set(int i, int j, unsigned x) {
    if (x >= field_->q()) throw Error("matrix entry " + std::to_string(x) + " out of range for " + field_->name());
    data_[static_cast<size_t>(i) * cols_ + j] = static_cast<Element>(x);
}

MatGF MatGF::transpose() const {
    MatGF t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.data_[static_cast<size_t>(j) * rows_ + i] = at(i, j);
    return t;
}

MatGF operator*(const MatGF& a, const MatGF& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
    const auto& f = *a.field_;
    MatGF c(a.field_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        Element* out = c.row(i);
        for (int l = 0; l < a.cols_; ++l) {
            Element x = a.at(i, l);
            if (x == 0) continue;
            const Element* br = b.row(l);
            for (int j = 0; j < b.cols_; ++j) out[j] = f.add(out[j], f.mul(x, br[j]));
        }
    }
    return c;
}

bool operator==(const MatGF& a, const MatGF& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

MatGF MatGF::inverse() const {
    if (rows_ != cols_) throw Error("inverse of a non-square matrix");
    const int n = rows_;
    std::vector<Element> aug(static_cast<size_t>(n) * 2 * n, 0);
    for (int i = 0; i < n; ++i) {
        std::copy(row(i), row(i) + n, aug.begin() + static_cast<size_t>(i) * 2 * n);
        aug[static_cast<size_t>(i) * 2 * n + n + i] = 1;
    }
    std::vector<int> piv(n);
    int r = detail::rref(*field_, aug.data(), n, 2 * n, piv.data());
    if (r < n || piv[n - 1] >= n) throw Error("matrix is singular");
    MatGF inv(field_, n, n);
    for (int i = 0; i < n; ++i)
        std::copy(aug.begin() + static_cast<size_t>(i) * 2 * n + n, aug.begin() + static_cast<size_t>(i + 1) * 2 * n,
                  inv.row(i));
    return inv;
}

MatGF MatGF::pow(std::uint64_t e) const {
    if (rows_ != cols_) throw Error("power of a non-square matrix");
    MatGF result = identity(field_, rows_), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

int MatGF::rank() const {
    auto copy = data_;
    return detail::rref(*field_, copy.data(), rows_, cols_);
}

std::string MatGF::to_string() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out << (j ? " " : "") << static_cast<unsigned>(at(i, j));
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------

int detail::rref(const GaloisField& f, Element* data, int rows, int cols, int* pivots) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (data[i * cols + c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        Element* pr = data + r * cols;
        if (sel != r) std::swap_ranges(pr, pr + cols, data + sel * cols);
        Element lead = pr[c];
        if (lead != 1) {
            Element li = f.inv(lead);
            for (int j = c; j < cols; ++j) pr[j] = f.mul(pr[j], li);
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Element* ri = data + i * cols;
            Element x = ri[c];
            if (x == 0) continue;
            Element nx = f.neg(x);
            for (int j = c; j < cols; ++j) ri[j] = f.add(ri[j], f.mul(nx, pr[j]));
        }
        if (pivots) pivots[r] = c;
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(FieldPtr field, int v, int k, std::vector<Element> entries)
    : field_(std::move(field)), v_(v), k_(k), cm_(std::move(entries)), pivots_(k) {
    for (int i = 0; i < k; ++i) {
        int j = 0;
        while (j < v && cm_[static_cast<size_t>(i) * v + j] == 0) ++j;
        pivots_[i] = j;
    }
}

Subspace Subspace::zero(FieldPtr field, int v) { return Subspace(std::move(field), v, 0, {}); }

Subspace Subspace::full(FieldPtr field, int v) { return chain(std::move(field), v, v); }

Subspace Subspace::chain(FieldPtr field, int v, int i) {
    if (i < 0 || i > v) throw Error("chain index out of range");
    std::vector<Element> e(static_cast<size_t>(i) * v, 0);
    for (int r = 0; r < i; ++r) e[static_cast<size_t>(r) * v + (v - i + r)] = 1;
    return Subspace(std::move(field), v, i, std::move(e));
}

Subspace Subspace::span(const MatGF& rows) {
    auto data = rows.data();
    int k = detail::rref(*rows.field(), data.data(), rows.rows(), rows.cols());
    data.resize(static_cast<size_t>(k) * rows.cols());
    return Subspace(rows.field(), rows.cols(), k, std::move(data));
}

Subspace Subspace::trusted(FieldPtr field, int v, int k, std::vector<Element> entries) {
    return Subspace(std::move(field), v, k, std::move(entries));
}

Subspace Subspace::from_canonical(FieldPtr field, int v, int k, std::vector<Element> entries) {
    if (entries.size() != static_cast<size_t>(k) * v) throw Error("canonical matrix has the wrong number of entries");
    for (auto x : entries)
        if (x >= field->q()) throw Error("entry out of range for " + field->name());
    Subspace s(std::move(field), v, k, std::move(entries));
    for (int i = 0; i < k; ++i) {
        int p = s.pivots_[i];
        if (p >= v) throw Error("row " + std::to_string(i + 1) + " is zero");
        if (i > 0 && p <= s.pivots_[i - 1])
            throw Error("row " + std::to_string(i + 1) + " does not start right of the previous pivot");
        if (s.at(i, p) != 1) throw Error("row " + std::to_string(i + 1) + " has a leading entry different from 1");
        for (int r = 0; r < k; ++r)
            if (r != i && s.at(r, p) != 0)
                throw Error("row " + std::to_string(i + 1) + ": pivot column " + std::to_string(p + 1) +
                            " is not a unit vector");
    }
    return s;
}

MatGF Subspace::matrix() const {
    MatGF m(field_, k_, v_);
    if (!cm_.empty()) std::copy(cm_.begin(), cm_.end(), m.row(0));
    return m;
}

bool Subspace::contains_vector(const Element* x) const {
    const auto& f = *field_;
    std::vector<Element> r(x, x + v_);
    for (int i = 0; i < k_; ++i) {
        Element c = r[pivots_[i]];
        if (c == 0) continue;
        Element nc = f.neg(c);
        const Element* ri = row(i);
        for (int j = pivots_[i]; j < v_; ++j) r[j] = f.add(r[j], f.mul(nc, ri[j]));
    }
    return std::all_of(r.begin(), r.end(), [](Element e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    require_same(*this, other, "contains");
    if (other.k_ > k_) return false;
    for (int i = 0; i < other.k_; ++i)
        if (!contains_vector(other.row(i))) return false;
    return true;
}

std::string Subspace::key() const {
    std::string s;
    s.reserve(cm_.size() + 2);
    s.push_back(static_cast<char>(v_));
    s.push_back(static_cast<char>(k_));
    s.append(cm_.begin(), cm_.end());
    return s;
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.v_ != b.v_) return a.v_ < b.v_;
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.cm_ < b.cm_;
}

std::string Subspace::to_string() const {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < k_; ++i) {
        out << (i ? " / " : "");
        for (int j = 0; j < v_; ++j) out << (j ? " " : "") << static_cast<unsigned>(at(i, j));
    }
    out << "]";
    return out.str();
}

// ---------------------------------------------------------------------------
// Lattice operations

Subspace sum(const Subspace& a, const Subspace& b) {
    require_same(a, b, "sum");
    MatGF m(a.field(), a.dim() + b.dim(), a.v());
    std::copy(a.entries().begin(), a.entries().end(), m.row(0));
    if (b.dim() > 0) std::copy(b.entries().begin(), b.entries().end(), m.row(a.dim()));
    return Subspace::span(m);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same(a, b, "intersect");
    // Zassenhaus: rows (a | a) and (b | 0); the reduced rows of the form (0 | x) span a ∩ b.
    const int v = a.v(), ka = a.dim(), kb = b.dim();
    const int rows = ka + kb, cols = 2 * v;
    std::vector<Element> m(static_cast<size_t>(rows) * cols, 0);
    for (int i = 0; i < ka; ++i) {
        std::copy(a.row(i), a.row(i) + v, m.begin() + static_cast<size_t>(i) * cols);
        std::copy(a.row(i), a.row(i) + v, m.begin() + static_cast<size_t>(i) * cols + v);
    }
    for (int i = 0; i < kb; ++i) std::copy(b.row(i), b.row(i) + v, m.begin() + static_cast<size_t>(ka + i) * cols);
    std::vector<int> piv(rows);
    int r = detail::rref(*a.field(), m.data(), rows, cols, piv.data());
    std::vector<Element> out;
    int k = 0;
    for (int i = 0; i < r; ++i) {
        if (piv[i] < v) continue;
        out.insert(out.end(), m.begin() + static_cast<size_t>(i) * cols + v, m.begin() + static_cast<size_t>(i + 1) * cols);
        ++k;
    }
    // Rows with pivots in the right half are already reduced among themselves.
    return Subspace::trusted(a.field(), v, k, std::move(out));
}

Subspace dual(const Subspace& a) {
    const auto& f = *a.field();
    const int v = a.v(), k = a.dim();
    std::vector<bool> is_pivot(v, false);
    for (int p : a.pivots()) is_pivot[p] = true;
    MatGF gen(a.field(), v - k, v);
    int r = 0;
    for (int j = 0; j < v; ++j) {
        if (is_pivot[j]) continue;
        Element* row = gen.row(r++);
        row[j] = 1;
        for (int i = 0; i < k; ++i) row[a.pivots()[i]] = f.neg(a.at(i, j));
    }
    return Subspace::span(gen);
}

Subspace dual_by_kernel(const Subspace& a) {
    const int v = a.v(), k = a.dim(), cols = k + v;
    std::vector<Element> m(static_cast<size_t>(v) * cols, 0);
    for (int j = 0; j < v; ++j) {
        for (int i = 0; i < k; ++i) m[static_cast<size_t>(j) * cols + i] = a.at(i, j);
        m[static_cast<size_t>(j) * cols + k + j] = 1;
    }
    std::vector<int> piv(v);
    int r = detail::rref(*a.field(), m.data(), v, cols, piv.data());
    std::vector<std::vector<unsigned>> rows;
    for (int i = 0; i < r; ++i) {
        if (piv[i] < k) continue;
        std::vector<unsigned> row(v);
        for (int j = 0; j < v; ++j) row[j] = m[static_cast<size_t>(i) * cols + k + j];
        rows.push_back(row);
    }
    if (rows.empty()) return Subspace::zero(a.field(), v);
    return Subspace::span(MatGF::from_rows(a.field(), rows));
}

Subspace reverse_coordinates(const Subspace& a) {
    MatGF m(a.field(), a.dim(), a.v());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.v(); ++j) m.row(i)[a.v() - 1 - j] = a.at(i, j);
    return Subspace::span(m);
}

Subspace apply(const Subspace& a, const MatGF& m) {
    if (m.rows() != a.v()) throw Error("apply: matrix size does not match the ambient dimension");
    return Subspace::span(a.matrix() * m);
}

Subspace meet_with_chain(const Subspace& u, int i) {
    const int v = u.v();
    if (i < 0 || i > v) throw Error("chain index out of range");
    // Rows whose pivot lies in the last i columns form the (0 C) block.
    std::vector<Element> out;
    int k = 0;
    for (int r = 0; r < u.dim(); ++r) {
        if (u.pivots()[r] < v - i) continue;
        out.insert(out.end(), u.row(r), u.row(r) + v);
        ++k;
    }
    return Subspace::trusted(u.field(), v, k, std::move(out));
}

Subspace join_with_chain(const Subspace& u, int i) {
    const int v = u.v();
    if (i < 0 || i > v) throw Error("chain index out of range");
    // Block diagonal (A 0 / 0 E_i) with A the upper-left block of cm(U).
    std::vector<Element> out;
    int k = 0;
    for (int r = 0; r < u.dim(); ++r) {
        if (u.pivots()[r] >= v - i) break;
        out.insert(out.end(), u.row(r), u.row(r) + v - i);
        out.insert(out.end(), i, 0);
        ++k;
    }
    for (int r = 0; r < i; ++r) {
        out.insert(out.end(), v, 0);
        out[static_cast<size_t>(k + r) * v + (v - i + r)] = 1;
    }
    return Subspace::trusted(u.field(), v, k + i, std::move(out));
}

bool covers(const Subspace& k, const Subspace& u1, const Subspace& u2) {
    if (!u2.contains(u1)) throw Error("covers: flag is not nested (U1 is not contained in U2)");
    return sum(u1, k) == sum(u2, k);
}

bool avoids(const Subspace& k, const Subspace& u1, const Subspace& u2) {
    if (!u2.contains(u1)) throw Error("avoids: flag is not nested (U1 is not contained in U2)");
    return intersect(u1, k) == intersect(u2, k);
}

namespace {
void check_flag(const Subspace& k, StandardFlag flag) {
    if (flag.i < 0 || flag.i > flag.j || flag.j > k.v()) throw Error("standard flag indices out of range");
}
}  // namespace

bool covers(const Subspace& k, StandardFlag flag) {
    check_flag(k, flag);
    // columns v-j .. v-i-1 (0-based) must all be pivots
    const int lo = k.v() - flag.j, hi = k.v() - flag.i;
    int count = 0;
    for (int p : k.pivots())
        if (p >= lo && p < hi) ++count;
    return count == hi - lo;
}

bool avoids(const Subspace& k, StandardFlag flag) {
    check_flag(k, flag);
    const int lo = k.v() - flag.j, hi = k.v() - flag.i;
    for (int p : k.pivots())
        if (p >= lo && p < hi) return false;
    return true;
}

Subspace restrict_to_chain(const Subspace& u, int i) {
    const int v = u.v();
    for (int p : u.pivots())
        if (p < v - i) throw Error("restrict_to_chain: subspace is not contained in V_" + std::to_string(i));
    std::vector<Element> out;
    out.reserve(static_cast<size_t>(u.dim()) * i);
    for (int r = 0; r < u.dim(); ++r) out.insert(out.end(), u.row(r) + (v - i), u.row(r) + v);
    return Subspace::trusted(u.field(), i, u.dim(), std::move(out));
}

Subspace embed_into_chain(const Subspace& u, int v) {
    const int pad = v - u.v();
    if (pad < 0) throw Error("embed_into_chain: target dimension too small");
    std::vector<Element> out;
    out.reserve(static_cast<size_t>(u.dim()) * v);
    for (int r = 0; r < u.dim(); ++r) {
        out.insert(out.end(), pad, 0);
        out.insert(out.end(), u.row(r), u.row(r) + u.v());
    }
    return Subspace::trusted(u.field(), v, u.dim(), std::move(out));
}

Subspace quotient_by_chain(const Subspace& w, int i) {
    const int v = w.v();
    if (i < 0 || i > v) throw Error("chain index out of range");
    // W >= V_i iff its last i pivots are the last i columns.
    int tail = 0;
    for (int p : w.pivots())
        if (p >= v - i) ++tail;
    if (tail != i) throw Error("quotient_by_chain: subspace does not contain V_" + std::to_string(i));
    std::vector<Element> out;
    int k = 0;
    for (int r = 0; r < w.dim(); ++r) {
        if (w.pivots()[r] >= v - i) break;
        out.insert(out.end(), w.row(r), w.row(r) + (v - i));
        ++k;
    }
    return Subspace::trusted(w.field(), v - i, k, std::move(out));
}

Subspace lift_from_quotient(const Subspace& q, int i) {
    const int v = q.v() + i;
    std::vector<Element> out;
    out.reserve(static_cast<size_t>(q.dim() + i) * v);
    for (int r = 0; r < q.dim(); ++r) {
        out.insert(out.end(), q.row(r), q.row(r) + q.v());
        out.insert(out.end(), i, 0);
    }
    for (int r = 0; r < i; ++r) {
        size_t base = out.size();
        out.insert(out.end(), v, 0);
        out[base + q.v() + r] = 1;
    }
    return Subspace::trusted(q.field(), v, q.dim() + i, std::move(out));
}

}  // namespace qdesign
