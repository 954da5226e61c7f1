#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace betalab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (canonicalized). Throws ParseError.
Rational parse_rational(std::string_view text);
/// Canonical "p/q" text; integers print without a denominator.
std::string rational_to_string(const Rational& q);
int sign(const Rational& q);

class RationalPolynomial;

/// Polynomial with arbitrary-precision integer coefficients, ascending by degree.
/// The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    /// Coefficient of z^i; zero beyond the degree.
    Integer coeff(std::size_t i) const;
    const Integer& leading() const { return coeffs_.back(); }

    Rational evaluate(const Rational& x) const;
    int sign_at(const Rational& x) const;
    IntPolynomial derivative() const;
    RationalPolynomial to_rational() const;

    /// "z^3 - 3*z^2 - z + 1" style rendering, highest degree first.
    std::string to_string(char var = 'z') const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void normalize();
    std::vector<Integer> coeffs_;
};

/// Polynomial over Q, ascending by degree. Used for exact division, gcds and
/// Sturm sequences; the zero polynomial is empty.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const;
    const Rational& leading() const { return coeffs_.back(); }

    Rational evaluate(const Rational& x) const;
    int sign_at(const Rational& x) const;
    RationalPolynomial derivative() const;
    RationalPolynomial monic() const;
    /// Clears denominators and content; result has positive leading coefficient.
    IntPolynomial primitive() const;

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const Rational& c, const RationalPolynomial& a);
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Euclidean division; divisor must be nonzero.
    static void divmod(const RationalPolynomial& a, const RationalPolynomial& b,
                       RationalPolynomial& quotient, RationalPolynomial& remainder);
    /// Monic gcd (zero if both inputs are zero).
    static RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

/// Square-free part p / gcd(p, p'), made monic over Q.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// Sturm sequence of a square-free polynomial.
std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& squarefree);

/// Number of distinct real roots of p in the closed interval [lo, hi].
int count_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi);
int count_real_roots(const std::vector<RationalPolynomial>& sturm, const Rational& lo,
                     const Rational& hi);

/// Cauchy bound 1 + max |a_i / a_n| on the modulus of every complex root.
Rational cauchy_bound(const IntPolynomial& p);

} // namespace betalab
