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

#include "qdesign/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qdesign/subspace.hpp"

namespace qdesign {

namespace {

using Element = GaloisField::Element;

// Irreducible moduli for the non-prime orders below 17, low to high.
const std::map<unsigned, std::vector<Element>>& bundled_moduli() {
    static const std::map<unsigned, std::vector<Element>> table = {
        {4, {1, 1, 1}},        // x^2 + x + 1
        {8, {1, 1, 0, 1}},     // x^3 + x + 1
        {9, {1, 0, 1}},        // x^2 + 1
        {16, {1, 1, 0, 0, 1}}, // x^4 + x + 1
    };
    return table;
}

std::vector<unsigned> to_digits(unsigned x, unsigned p, unsigned e) {
    std::vector<unsigned> d(e);
    for (unsigned i = 0; i < e; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
    unsigned x = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) x = x * p + *it;
    return x;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned q) {
    if (q < 2) throw Error("field order must be a prime power, got " + std::to_string(q));
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw Error("field order must be a prime power, got " + std::to_string(q));
    return {p, e};
}

GaloisField::GaloisField(unsigned p, unsigned e, std::vector<Element> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < e; ++i) q_ *= p;
    if (q_ > 255) throw Error("field order must be below 256");
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);

    for (unsigned a = 0; a < q_; ++a) {
        auto da = to_digits(a, p, e);
        std::vector<unsigned> dn(e);
        for (unsigned i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
        neg_[a] = static_cast<Element>(from_digits(dn, p));
        for (unsigned b = 0; b < q_; ++b) {
            auto db = to_digits(b, p, e);
            std::vector<unsigned> ds(e);
            for (unsigned i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
            add_[a * q_ + b] = static_cast<Element>(from_digits(ds, p));

            // schoolbook product, then reduce by the monic modulus
            std::vector<unsigned> prod(2 * e, 0);
            for (unsigned i = 0; i < e; ++i)
                for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            if (e > 1) {
                for (int deg = 2 * static_cast<int>(e) - 2; deg >= static_cast<int>(e); --deg) {
                    unsigned c = prod[deg];
                    if (c == 0) continue;
                    for (unsigned i = 0; i <= e; ++i) {
                        unsigned idx = deg - e + i;
                        prod[idx] = (prod[idx] + (p - c) * modulus_[i]) % p;
                    }
                }
            }
            prod.resize(e);
            mul_[a * q_ + b] = static_cast<Element>(from_digits(prod, p));
        }
    }
    for (unsigned a = 1; a < q_; ++a) {
        for (unsigned b = 1; b < q_; ++b) {
            if (mul_[a * q_ + b] == 0) throw Error("modulus is reducible: zero divisors in " + name());
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Element>(b);
        }
    }
}

std::shared_ptr<const GaloisField> GaloisField::make(unsigned q) {
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const GaloisField>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;

    auto [p, e] = prime_power(q);
    std::vector<Element> modulus;
    if (e > 1) {
        auto it = bundled_moduli().find(q);
        if (it == bundled_moduli().end())
            throw Error("no bundled modulus for GF(" + std::to_string(q) + "); extension fields need q <= 16");
        modulus = it->second;
    }
    std::shared_ptr<const GaloisField> f(new GaloisField(p, e, std::move(modulus)));
    cache.emplace(q, f);
    return f;
}

std::shared_ptr<const GaloisField> GaloisField::make(unsigned p, std::vector<Element> modulus) {
    if (!qdesign::is_prime(p)) throw Error("characteristic must be prime");
    if (modulus.size() < 2 || modulus.back() != 1) throw Error("modulus must be monic of degree >= 1");
    for (auto c : modulus)
        if (c >= p) throw Error("modulus coefficient out of range");
    unsigned e = static_cast<unsigned>(modulus.size() - 1);
    if (e == 1) return make(p);
    return std::shared_ptr<const GaloisField>(new GaloisField(p, e, std::move(modulus)));
}

GaloisField::Element GaloisField::inv(Element a) const {
    if (a == 0) throw Error("inversion of zero in " + name());
    return inv_[a];
}

std::string GaloisField::name() const { return "GF(" + std::to_string(q_) + ")"; }

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, unsigned value) : field_(std::move(field)) {
    if (!field_) throw Error("field element without a field");
    if (value >= field_->q()) throw Error("value " + std::to_string(value) + " out of range for " + field_->name());
    value_ = static_cast<GaloisField::Element>(value);
}

namespace {
const GaloisField& common_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field() && !a.field()->same_as(*b.field()))
        throw Error("mixed-field operands: " + a.field()->name() + " and " + b.field()->name());
    return *a.field();
}
}  // namespace

FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {a.field_, common_field(a, b).add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return {a.field_, common_field(a, b).sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {a.field_, common_field(a, b).mul(a.value_, b.value_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const auto& f = common_field(a, b);
    return {a.field_, f.mul(a.value_, f.inv(b.value_))};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && (a.field_ == b.field_ || a.field_->same_as(*b.field_));
}

// ---------------------------------------------------------------------------

namespace poly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

Poly mul(const GaloisField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly mod(const GaloisField& f, Poly a, const Poly& m) {
    int dm = degree(m);
    if (dm < 0) throw Error("polynomial division by zero");
    auto lead_inv = f.inv(m[dm]);
    for (int da = degree(a); da >= dm; da = degree(a)) {
        auto c = f.mul(a[da], lead_inv);
        for (int i = 0; i <= dm; ++i) a[da - dm + i] = f.sub(a[da - dm + i], f.mul(c, m[i]));
    }
    trim(a);
    return a;
}

Poly mulmod(const GaloisField& f, const Poly& a, const Poly& b, const Poly& m) { return mod(f, mul(f, a, b), m); }

Poly powmod(const GaloisField& f, Poly base, std::uint64_t exp, const Poly& m) {
    Poly result{1};
    result = mod(f, result, m);
    base = mod(f, std::move(base), m);
    while (exp > 0) {
        if (exp & 1) result = mulmod(f, result, base, m);
        base = mulmod(f, base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace poly

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    // q^v - 1 for the two bundled sextics
    static const std::map<std::uint64_t, std::vector<std::uint64_t>> known = {
        {728, {2, 7, 13}},
        {15624, {2, 3, 7, 31}},
    };
    if (auto it = known.find(n); it != known.end()) return it->second;
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------

PrimitivePolynomial::PrimitivePolynomial(FieldPtr field, const std::vector<unsigned>& high_first)
    : field_(std::move(field)) {
    if (high_first.size() < 2) throw Error("primitive polynomial must have degree >= 1");
    if (high_first.front() != 1) throw Error("primitive polynomial must be monic");
    const auto& f = *field_;
    coeffs_.assign(high_first.rbegin(), high_first.rend());
    for (auto c : coeffs_)
        if (c >= f.q()) throw Error("coefficient out of range for " + f.name());

    const int v = degree();
    std::uint64_t order = 1;
    for (int i = 0; i < v; ++i) {
        if (order > (std::uint64_t{1} << 62) / f.q()) throw Error("q^v - 1 exceeds 64 bits");
        order *= f.q();
    }
    order -= 1;

    const poly::Poly x{0, 1};
    auto one = poly::mod(f, poly::Poly{1}, coeffs_);
    if (poly::powmod(f, x, order, coeffs_) != one)
        throw NotPrimitiveError(to_string() + " is not primitive: alpha^(q^v-1) != 1", 0);
    for (auto r : prime_factors(order)) {
        if (poly::powmod(f, x, order / r, coeffs_) == one)
            throw NotPrimitiveError(to_string() + " is not primitive: alpha^((q^v-1)/" + std::to_string(r) + ") = 1",
                                    r);
    }
}

PrimitivePolynomial PrimitivePolynomial::parse(FieldPtr field, std::string_view csv) {
    std::vector<unsigned> coeffs;
    std::string token;
    std::stringstream ss{std::string(csv)};
    while (std::getline(ss, token, ',')) {
        try {
            size_t used = 0;
            long value = std::stol(token, &used);
            if (value < 0 || token.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
            coeffs.push_back(static_cast<unsigned>(value));
        } catch (const std::exception&) {
            throw Error("bad polynomial coefficient '" + token + "'");
        }
    }
    return PrimitivePolynomial(std::move(field), coeffs);
}

std::string PrimitivePolynomial::to_string() const {
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        s += std::to_string(coeffs_[i]);
        if (i > 0) s += ",";
    }
    return s;
}

namespace {
// Column j holds the coordinates of alpha^(exponent_j) reduced modulo the polynomial.
MatGF power_columns(const PrimitivePolynomial& pp, const std::vector<std::uint64_t>& exponents) {
    const auto& f = *pp.field();
    const int v = pp.degree();
    MatGF m(pp.field(), v, v);
    for (int j = 0; j < v; ++j) {
        auto c = poly::powmod(f, poly::Poly{0, 1}, exponents[j], pp.coefficients());
        for (int i = 0; i < static_cast<int>(c.size()); ++i) m.set(i, j, c[i]);
    }
    return m;
}
}  // namespace

MatGF singer_matrix(const PrimitivePolynomial& pp) {
    std::vector<std::uint64_t> exps(pp.degree());
    for (int j = 0; j < pp.degree(); ++j) exps[j] = j + 1;
    return power_columns(pp, exps);
}

MatGF frobenius_matrix(const PrimitivePolynomial& pp) {
    const auto& f = *pp.field();
    if (!f.is_prime())
        throw Error("Frobenius matrix requires a prime field; " + f.name() + " is an extension field");
    std::vector<std::uint64_t> exps(pp.degree());
    for (int j = 0; j < pp.degree(); ++j) exps[j] = static_cast<std::uint64_t>(j) * f.q();
    return power_columns(pp, exps);
}

}  // namespace qdesign
