#pragma once

#include "betalab/algebraic_real.hpp"

#include <memory>
#include <string>
#include <vector>

namespace betalab {

/// Shared description of Q[β]: β as an AlgebraicReal plus the monic modulus
/// (the defining polynomial divided by its leading coefficient). Immutable.
class BetaRing {
public:
    BetaRing(const AlgebraicReal& beta);

    const AlgebraicReal& beta() const { return beta_; }
    const RationalPolynomial& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }
    bool same_as(const BetaRing& other) const;

    // Cached powers of the working interval endpoints and midpoint.
    const std::vector<Rational>& lo_powers() const { return lo_pow_; }
    const std::vector<Rational>& hi_powers() const { return hi_pow_; }
    const std::vector<Rational>& mid_powers() const { return mid_pow_; }

private:
    AlgebraicReal beta_;
    RationalPolynomial modulus_;
    std::vector<Rational> lo_pow_, hi_pow_, mid_pow_;
};

using Ring = std::shared_ptr<const BetaRing>;

/// Working interval width used for ring construction: 2^-256.
Ring make_ring(const AlgebraicReal& beta);
Ring make_ring(const IntPolynomial& poly, const Rational& lo, const Rational& hi);

/// Exact element Σ coords[i] β^i of Q[β] (integral in every orbit computation).
class ZBetaElement {
public:
    ZBetaElement() = default;
    ZBetaElement(Ring ring, std::vector<Rational> coords);
    static ZBetaElement constant(const Ring& ring, const Rational& c);
    static ZBetaElement generator(const Ring& ring);

    const Ring& ring() const { return ring_; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_zero_coords() const;
    bool is_integral() const;

    ZBetaElement operator-() const;
    friend ZBetaElement operator+(const ZBetaElement& a, const ZBetaElement& b);
    friend ZBetaElement operator-(const ZBetaElement& a, const ZBetaElement& b);
    friend ZBetaElement operator*(const ZBetaElement& a, const ZBetaElement& b);
    friend ZBetaElement operator*(const Rational& k, const ZBetaElement& a);
    friend ZBetaElement operator+(const ZBetaElement& a, const Rational& k);
    friend ZBetaElement operator-(const ZBetaElement& a, const Rational& k);
    /// Coordinate identity.
    friend bool operator==(const ZBetaElement& a, const ZBetaElement& b) {
        return a.coords_ == b.coords_;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm. Throws
    /// NotInvertible for elements of value zero.
    ZBetaElement inverse() const;
    friend ZBetaElement operator/(const ZBetaElement& a, const ZBetaElement& b) {
        return a * b.inverse();
    }

    /// Exact sign of the value.
    int sign() const;
    /// Exact three-way comparison by value; RingMismatch across rings.
    Order compare(const ZBetaElement& other) const;
    Order compare(const Rational& q) const;
    double to_double() const;
    /// Rational enclosure of the value at the ring's working interval.
    std::pair<Rational, Rational> enclosure() const;

    /// "2 - b + b^2" with the generator printed as `var`.
    std::string to_string(char var = 'b') const;

private:
    RationalPolynomial as_polynomial() const;
    Ring ring_;
    std::vector<Rational> coords_;
};

} // namespace betalab
