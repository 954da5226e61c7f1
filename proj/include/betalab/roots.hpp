#pragma once

#include "betalab/polynomial.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <vector>

namespace betalab {

/// Storage precision for root coordinates; computations may use fewer bits.
using WideFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<512, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

struct ComplexPoint {
    WideFloat re, im;
    int precision = 53; ///< bits actually carried by the computation

    ComplexPoint() = default;
    ComplexPoint(WideFloat r, WideFloat i, int bits) : re(std::move(r)), im(std::move(i)), precision(bits) {}
    explicit ComplexPoint(std::complex<double> z)
        : re(z.real()), im(z.imag()), precision(53) {}

    std::complex<double> value() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    double abs() const { return std::abs(value()); }
    WideFloat wide_abs() const;
};

struct RootOptions {
    double eps = 1e-30;      ///< coefficient-scaled residual tolerance
    int bits = 128;          ///< initial working precision
    int retries = 2;         ///< precision doublings on NonConvergence
    int max_iterations = 600;
};

/// All deg(p) complex roots (with multiplicity) by Aberth–Ehrlich iteration,
/// seeded on the Cauchy-bound circle. Output sorted by (re, im).
/// Throws NonConvergence after exhausting the retries.
std::vector<ComplexPoint> all_roots(const IntPolynomial& p, const RootOptions& opt = {});
/// Same for real coefficients given in ascending order.
std::vector<ComplexPoint> all_roots(const std::vector<double>& coeffs, const RootOptions& opt = {});

/// |p(z)| evaluated in wide precision.
double residual(const IntPolynomial& p, const ComplexPoint& z);

} // namespace betalab
