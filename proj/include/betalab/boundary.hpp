#pragma once

#include "betalab/polynomial.hpp"

#include <complex>
#include <string>
#include <vector>

namespace betalab {

/// Truncated member 1 + Σ_{j=1}^N a_j w^j of the class with a_j in [-1, 1].
struct FPowerSeries {
    std::vector<double> coeffs; ///< a_1 .. a_N

    FPowerSeries() = default;
    /// Throws OutOfRange if some |a_j| > 1.
    explicit FPowerSeries(std::vector<double> a);
    std::size_t N() const { return coeffs.size(); }
    /// Ascending coefficients 1, a_1, ..., a_N.
    std::vector<double> polynomial() const;
};

struct SeriesValue {
    std::complex<double> value;
    double tail = 0; ///< |w|^{N+1} / (1 - |w|)
};

/// Horner evaluation plus the tail radius. Throws OutsideDisk for |w| >= 1.
SeriesValue evaluate(const FPowerSeries& T, std::complex<double> w);

/// a_n = +1 when nφ - α mod 2π lies in (0, π), -1 when in (π, 2π); landings on
/// 0 or π take +1 and are counted in *ties.
std::vector<int> rotation_coefficients(double phi, double alpha, std::size_t N, std::size_t* ties = nullptr);

struct LowerBoundReport {
    double modulus = 0;
    double value_residual = 0; ///< |T(λ)|
    bool passes = false;       ///< modulus >= 1/2 - tol
    bool strict_required = false;
    bool strict_holds = false; ///< modulus > 1/2
};

LowerBoundReport zero_lower_bound_check(const FPowerSeries& T, std::complex<double> lambda, double tol = 1e-9);

struct LambdaSolution {
    double phi = 0;
    double lambda = 0;
    double alpha = 0;
    double residual = 0;      ///< |T(λ e^{iφ})| with the anomalous coefficient in place
    double pure_residual = 0; ///< same with the anomalous coefficient rounded to ±1
    std::size_t n_trunc = 0;
    std::size_t anomalous_index = 0; ///< 0 when every coefficient is ±1
    double anomalous_value = 0;
    std::size_t ties = 0;
    bool certified = false; ///< no smaller on-ray zero on the 10^-3 grid
    std::vector<double> coefficients; ///< a_1 .. a_N of the optimal function
};

/// Minimal modulus of a zero with argument φ over the truncated class. φ is
/// reduced to (0, π) by the symmetries λ_φ = λ_{-φ} = λ_{π-φ}. Throws OutOfRange
/// at the endpoints and NoRoot if no zero exists below modulus 1.
LambdaSolution solve_lambda_phi(double phi, std::size_t N = 400, double tol = 1e-12,
                                double hint = 0);

/// g(r) = min_θ [cos θ + Σ r^n |cos(nφ - θ)|]; nonnegative exactly when some
/// member of the truncated class vanishes at r e^{iφ}.
double support_gap(double phi, std::size_t N, double r);

/// λ at the endpoints 0 and π, both exactly 1/2 from the geometric series.
Rational endpoint_lambda(bool at_pi);

struct BoundarySampleError {
    double phi;
    std::string message;
};

struct BoundaryCurve {
    std::vector<LambdaSolution> samples;
    std::vector<BoundarySampleError> failures;
    std::size_t continuity_warnings = 0; ///< adjacent jumps above slope_bound * Δφ
    double slope_bound = 1.0;
};

/// Independent per-φ solves on `jobs` threads.
BoundaryCurve boundary_curve(const std::vector<double>& grid, std::size_t N = 400, double tol = 1e-12,
                             unsigned jobs = 1);

/// phi,lambda,alpha,residual,n_trunc
std::string boundary_csv(const BoundaryCurve& curve);
/// Polar plot of 1/λ_φ with the radius-2 and radius-1.59 reference circles.
std::string boundary_svg(const BoundaryCurve& curve);

} // namespace betalab
