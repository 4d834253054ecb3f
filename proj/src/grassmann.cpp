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

#include "qdesign/grassmann.hpp"

#include <algorithm>
#include <limits>

namespace qdesign {

BigCount big_pow(unsigned base, unsigned exp) {
    BigCount r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

BigCount gaussian_binomial(int v, int k, unsigned q) {
    if (k < 0 || v < 0 || k > v) return 0;
    k = std::min(k, v - k);
    BigCount num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= big_pow(q, v - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("64-bit overflow in count");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("64-bit overflow in count");
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

std::uint64_t gaussian_binomial_u64(int v, int k, unsigned q) {
    BigCount g = gaussian_binomial(v, k, q);
    if (g > std::numeric_limits<std::uint64_t>::max()) throw Error("64-bit overflow in Gaussian binomial");
    return static_cast<std::uint64_t>(g);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Walker {
    const GaloisField& f;
    int v, k;
    std::vector<Element> cm;
    const std::function<bool(const Element*)>& visit;
    bool stopped = false;

    // `col` is the next column to fill, `y` the number of pivots placed so far.
    void step(int col, int y) {
        if (stopped) return;
        if (col == v) {
            if (!visit(cm.data())) stopped = true;
            return;
        }
        if (y < k) {
            cm[static_cast<size_t>(y) * v + col] = 1;
            step(col + 1, y + 1);
            cm[static_cast<size_t>(y) * v + col] = 0;
            if (stopped) return;
        }
        if (v - col - 1 >= k - y) {
            // labels in increasing order, row 0 most significant
            std::uint64_t count = checked_pow(f.q(), y);
            for (std::uint64_t label = 0; label < count && !stopped; ++label) {
                std::uint64_t x = label;
                for (int r = y - 1; r >= 0; --r) {
                    cm[static_cast<size_t>(r) * v + col] = static_cast<Element>(x % f.q());
                    x /= f.q();
                }
                step(col + 1, y);
            }
            for (int r = 0; r < y; ++r) cm[static_cast<size_t>(r) * v + col] = 0;
        }
    }
};

}  // namespace

void for_each_canonical(const GaloisField& f, int v, int k, const std::function<bool(const Element*)>& visit) {
    if (k < 0 || k > v) return;
    Walker w{f, v, k, std::vector<Element>(static_cast<size_t>(k) * v, 0), visit};
    w.step(0, 0);
}

void for_each_subspace(const FieldPtr& field, int v, int k, const std::function<bool(const Subspace&)>& visit) {
    const size_t n = static_cast<size_t>(k) * v;
    for_each_canonical(*field, v, k, [&](const Element* cm) {
        return visit(Subspace::trusted(field, v, k, std::vector<Element>(cm, cm + n)));
    });
}

std::vector<Subspace> grassmannian(const FieldPtr& field, int v, int k) {
    std::vector<Subspace> out;
    for_each_subspace(field, v, k, [&](const Subspace& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Grid paths

int GridPath::height() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const PathStep& s) { return s.vertical; }));
}

Subspace path_to_subspace(FieldPtr field, const GridPath& path) {
    const int v = static_cast<int>(path.steps.size());
    const int k = path.height();
    std::vector<Element> cm(static_cast<size_t>(k) * v, 0);
    int y = 0;
    for (int col = 0; col < v; ++col) {
        const auto& s = path.steps[col];
        if (s.vertical) {
            if (!s.label.empty()) throw Error("vertical step " + std::to_string(col + 1) + " carries a label");
            cm[static_cast<size_t>(y) * v + col] = 1;
            ++y;
        } else {
            if (static_cast<int>(s.label.size()) != y)
                throw Error("horizontal step " + std::to_string(col + 1) + " has a label of length " +
                            std::to_string(s.label.size()) + ", expected " + std::to_string(y));
            for (int r = 0; r < y; ++r) {
                if (s.label[r] >= field->q()) throw Error("label entry out of range");
                cm[static_cast<size_t>(r) * v + col] = s.label[r];
            }
        }
    }
    return Subspace::trusted(std::move(field), v, k, std::move(cm));
}

GridPath subspace_to_path(const Subspace& s) {
    GridPath path;
    path.steps.resize(s.v());
    int y = 0;
    for (int col = 0; col < s.v(); ++col) {
        auto& step = path.steps[col];
        if (y < s.dim() && s.pivots()[y] == col) {
            step.vertical = true;
            ++y;
        } else {
            step.label.resize(y);
            for (int r = 0; r < y; ++r) step.label[r] = s.at(r, col);
        }
    }
    return path;
}

// ---------------------------------------------------------------------------
// Codec

std::uint64_t encode_row(const Element* row, int v, unsigned q) {
    std::uint64_t code = 0;
    for (int j = 0; j < v; ++j) code = code * q + row[j];
    return code;
}

void decode_row(std::uint64_t code, int v, unsigned q, Element* row) {
    for (int j = v - 1; j >= 0; --j) {
        row[j] = static_cast<Element>(code % q);
        code /= q;
    }
}

std::vector<std::uint64_t> encode_block(const Subspace& s) {
    std::vector<std::uint64_t> codes(s.dim());
    for (int i = 0; i < s.dim(); ++i) codes[i] = encode_row(s.row(i), s.v(), s.field()->q());
    return codes;
}

Subspace decode_block(const FieldPtr& field, int v, const std::vector<std::uint64_t>& codes) {
    const int k = static_cast<int>(codes.size());
    const std::uint64_t limit = checked_pow(field->q(), v);
    std::vector<Element> cm(static_cast<size_t>(k) * v);
    for (int i = 0; i < k; ++i) {
        if (codes[i] >= limit)
            throw Error("row " + std::to_string(i + 1) + ": code " + std::to_string(codes[i]) + " exceeds q^v - 1");
        decode_row(codes[i], v, field->q(), cm.data() + static_cast<size_t>(i) * v);
    }
    return Subspace::from_canonical(field, v, k, std::move(cm));
}

bool packable(int v, int k, unsigned q) {
    // q^(v*k) <= 2^128 - 1  <=>  v*k*log2(q) < 128
    PackedKey x = 1;
    for (int i = 0; i < v * k; ++i) {
        if (x > (~PackedKey{0}) / q) return false;
        x *= q;
    }
    return true;
}

PackedKey pack_canonical(const Element* cm, int k, int v, unsigned q) {
    PackedKey key = 0;
    for (int i = 0; i < k * v; ++i) key = key * q + cm[i];
    return key;
}

PackedKey pack(const Subspace& s) { return pack_canonical(s.entries().data(), s.dim(), s.v(), s.field()->q()); }

void unpack_canonical(PackedKey key, int k, int v, unsigned q, Element* cm) {
    for (int i = k * v - 1; i >= 0; --i) {
        cm[i] = static_cast<Element>(key % q);
        key /= q;
    }
}

Subspace unpack(const FieldPtr& field, int v, int k, PackedKey key) {
    std::vector<Element> cm(static_cast<size_t>(k) * v);
    unpack_canonical(key, k, v, field->q(), cm.data());
    return Subspace::trusted(field, v, k, std::move(cm));
}

SubspaceIndex::SubspaceIndex(FieldPtr field, int v, int k) : field_(std::move(field)), v_(v), k_(k) {
    if (!packable(v, k, field_->q())) throw Error("subspace keys do not fit in 128 bits");
    keys_.reserve(gaussian_binomial_u64(v, k, field_->q()));
    const unsigned q = field_->q();
    for_each_canonical(*field_, v, k, [&](const Element* cm) {
        keys_.push_back(pack_canonical(cm, k, v, q));
        return true;
    });
    std::sort(keys_.begin(), keys_.end());
}

std::int64_t SubspaceIndex::find(PackedKey key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return -1;
    return it - keys_.begin();
}

std::vector<Element> coefficient_patterns(const GaloisField& f, int k, int t) {
    std::vector<Element> out;
    for_each_canonical(f, k, t, [&](const Element* cm) {
        out.insert(out.end(), cm, cm + static_cast<size_t>(t) * k);
        return true;
    });
    return out;
}

void combine_rows(const GaloisField& f, const Element* c, int t, int k, const Element* b, int v, Element* out) {
    std::fill(out, out + static_cast<size_t>(t) * v, 0);
    for (int i = 0; i < t; ++i) {
        Element* o = out + static_cast<size_t>(i) * v;
        for (int l = 0; l < k; ++l) {
            Element x = c[i * k + l];
            if (x == 0) continue;
            const Element* br = b + static_cast<size_t>(l) * v;
            for (int j = 0; j < v; ++j) o[j] = f.add(o[j], f.mul(x, br[j]));
        }
    }
}

}  // namespace qdesign
