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

#ifndef QDESIGN_FIELD_HPP
#define QDESIGN_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdesign {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class MatGF;

/**
 * Finite field GF(q), q = p^e < 256.
 *
 * Elements are encoded as integers in [0, q). For prime fields this is the
 * residue itself; for extension fields it is the coefficient vector
 * c_0 + c_1 x + ... + c_{e-1} x^{e-1} read as the base-p number
 * c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  All arithmetic goes through
 * precomputed tables, so a field object is immutable and cheap to share.
 */
class GaloisField {
   public:
    using Element = std::uint8_t;

    /// Field of order q. Extension fields (q <= 16) use a bundled irreducible modulus.
    static std::shared_ptr<const GaloisField> make(unsigned q);

    /// Extension field GF(p^e) with an explicit monic modulus, coefficients low to high.
    static std::shared_ptr<const GaloisField> make(unsigned p, std::vector<Element> modulus);

    unsigned q() const noexcept { return q_; }
    unsigned p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    bool is_prime() const noexcept { return e_ == 1; }

    /// Modulus over GF(p), low to high, monic of degree e; empty for prime fields.
    const std::vector<Element>& modulus() const noexcept { return modulus_; }

    Element add(Element a, Element b) const noexcept { return add_[a * q_ + b]; }
    Element sub(Element a, Element b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Element mul(Element a, Element b) const noexcept { return mul_[a * q_ + b]; }
    Element neg(Element a) const noexcept { return neg_[a]; }
    Element inv(Element a) const;

    /// Same order and modulus.
    bool same_as(const GaloisField& other) const noexcept {
        return q_ == other.q_ && modulus_ == other.modulus_;
    }

    std::string name() const;

   private:
    GaloisField(unsigned p, unsigned e, std::vector<Element> modulus);

    unsigned q_, p_, e_;
    std::vector<Element> modulus_;
    std::vector<Element> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

bool is_prime(std::uint64_t n);

/// Decomposes q = p^e; throws if q is not a prime power.
std::pair<unsigned, unsigned> prime_power(unsigned q);

/// A field element bound to its field; arithmetic checks that operands share a field.
class FieldElement {
   public:
    FieldElement(FieldPtr field, unsigned value);

    unsigned value() const noexcept { return value_; }
    const FieldPtr& field() const noexcept { return field_; }

    FieldElement inv() const;
    FieldElement operator-() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);

   private:
    FieldPtr field_;
    GaloisField::Element value_;
};

/// Polynomials over GF(q), coefficient vectors low to high degree, no trailing zeros.
namespace poly {

using Poly = std::vector<GaloisField::Element>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
Poly mul(const GaloisField& f, const Poly& a, const Poly& b);
Poly mod(const GaloisField& f, Poly a, const Poly& m);
Poly mulmod(const GaloisField& f, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const GaloisField& f, Poly base, std::uint64_t exp, const Poly& m);

}  // namespace poly

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Raised when a polynomial fails the primitivity test.
class NotPrimitiveError : public Error {
   public:
    NotPrimitiveError(const std::string& what, std::uint64_t witness)
        : Error(what), witness_(witness) {}
    /// Prime r with alpha^((q^v-1)/r) = 1, or 0 when alpha^(q^v-1) != 1 already.
    std::uint64_t witness() const noexcept { return witness_; }

   private:
    std::uint64_t witness_;
};

/**
 * Monic polynomial of degree v over GF(q) whose root generates GF(q^v)^*.
 * Primitivity is verified on construction.
 */
class PrimitivePolynomial {
   public:
    /// Coefficients from the leading term down to the constant term.
    PrimitivePolynomial(FieldPtr field, const std::vector<unsigned>& coefficients_high_first);

    /// Parses "1,0,2,0,1,2,2" (leading coefficient first, constant term last).
    static PrimitivePolynomial parse(FieldPtr field, std::string_view csv);

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficients low to high.
    const poly::Poly& coefficients() const noexcept { return coeffs_; }

    std::string to_string() const;

   private:
    FieldPtr field_;
    poly::Poly coeffs_;
};

/// Matrix of x -> alpha x in the basis 1, alpha, ..., alpha^(v-1) (acting on coordinate columns).
MatGF singer_matrix(const PrimitivePolynomial& poly);

/// Matrix of x -> x^q in the same basis; requires q prime.
MatGF frobenius_matrix(const PrimitivePolynomial& poly);

}  // namespace qdesign

#endif  // QDESIGN_FIELD_HPP
