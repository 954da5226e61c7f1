#pragma once

#include "betalab/errors.hpp"
#include "betalab/polynomial.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace betalab {

/// A real root of an integer polynomial, pinned by a rational isolating
/// interval. Values are immutable; refine() returns a new value.
class AlgebraicReal {
public:
    /// Verifies (Sturm count) that the square-free part of `defining` has exactly
    /// one root in [lo, hi]. Throws InvalidIsolation otherwise.
    AlgebraicReal(IntPolynomial defining, Rational lo, Rational hi);

    static AlgebraicReal from_rational(const Rational& q);

    const IntPolynomial& defining() const { return data_->defining; }
    const RationalPolynomial& squarefree() const { return data_->squarefree; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    /// The exact value when the interval has collapsed onto a rational root.
    std::optional<Rational> exact() const;

    /// Bisects until width <= target_width. The root stays inside.
    AlgebraicReal refine(const Rational& target_width) const;

    /// Exact comparison of the root against a rational.
    Order compare(const Rational& q) const;
    /// Nearest double to the root (interval refined to 2^-80 first).
    double to_double() const;

private:
    struct Data {
        IntPolynomial defining;
        RationalPolynomial squarefree;
        std::vector<RationalPolynomial> sturm;
    };
    AlgebraicReal(std::shared_ptr<const Data> data, Rational lo, Rational hi)
        : data_(std::move(data)), lo_(std::move(lo)), hi_(std::move(hi)) {}

    std::shared_ptr<const Data> data_;
    Rational lo_, hi_;
};

/// All distinct real roots of p in [lo, hi], increasing. With `open` set, roots
/// at the endpoints are left out.
std::vector<AlgebraicReal> real_roots_in(const IntPolynomial& p, const Rational& lo,
                                         const Rational& hi, bool open = false);

/// The unique integer m with m < x <= m + 1.
Integer ceil_minus_one(const AlgebraicReal& x);

} // namespace betalab
