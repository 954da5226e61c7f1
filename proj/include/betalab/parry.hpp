#pragma once

#include "betalab/gbeta_map.hpp"
#include "betalab/roots.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace betalab {

struct ParryPolynomial {
    IntPolynomial poly;
    std::size_t k = 0; ///< preperiod
    std::size_t p = 1; ///< period
    Expansion expansion;
};

/// Generalized Parry polynomial of an eventually periodic expansion of 1.
/// Throws NotInfinite for Finite / Truncated shapes.
ParryPolynomial build_parry_polynomial(const Expansion& exp);

struct ZeroEquivalenceReport {
    double poly_residual = 0;   ///< |P(z)|
    double series_residual = 0; ///< |1 - Σ_{j<=N} s(j)d(j) z^-j|
    double tail_bound = 0;      ///< (m+1)|z|^-N / (1 - |z|^-1)
    bool poly_vanishes = false;
    bool series_vanishes = false;
    bool consistent() const { return poly_vanishes == series_vanishes; }
};

/// Both sides of the zero equivalence at z. `poly_tol` decides |P(z)|, the
/// series side uses series_tol + 10 * tail. Throws InsideDisk if |z| <= 1.
ZeroEquivalenceReport verify_zero_equivalence(const ParryPolynomial& P, const ComplexPoint& z,
                                              std::size_t N, double poly_tol = 1e-8,
                                              double series_tol = 1e-8);

struct FactorIdentityReport {
    std::complex<double> lhs;       ///< 1 - Σ_{j<=N} s(j)d(j) z^-j
    std::complex<double> rhs;       ///< (1 - β/z) Σ_{j<=N} c_j z^-j
    std::complex<double> predicted; ///< exact truncation gap β c_N z^-(N+1)
    double discrepancy = 0;         ///< |lhs - rhs - predicted|
    double tail_bound = 0;
};

/// Truncated factorization identity along the exact orbit of 1 (PCF maps use
/// the detected cycle; other maps iterate N + 1 steps). Throws InsideDisk.
FactorIdentityReport verify_factor_identity(const GBetaMap& map, std::complex<double> z, std::size_t N);
FactorIdentityReport verify_factor_identity(const GBetaMap& map, const PcfResult& pcf,
                                            std::complex<double> z, std::size_t N);

/// Steps s(j), d(j) for j = 1..N+1 and c_j = s(j+1) f^j(1) for j = 0..N as doubles.
struct OrbitSeries {
    std::vector<ExpansionStep> steps;
    std::vector<double> c;
};
OrbitSeries orbit_series(const PcfResult& pcf, std::size_t N);

/// Checks β c_j - s(j+1) d(j+1) = c_{j+1} exactly for j = 0..count-1.
/// Returns the first failing j, or nullopt.
std::optional<std::size_t> check_recursion_identity(const GBetaMap& map, const PcfResult& pcf,
                                                    std::size_t count);

struct CriterionSequence {
    std::vector<long> M;
    std::vector<long> a;          ///< |M(j)|
    std::vector<int> s;           ///< sign M(j)
    std::vector<int> itinerary;   ///< It(1..n)
    SignConfiguration E;          ///< length It(1) + 1
    std::vector<char> constrained; ///< E entries fixed by the sequence

    std::size_t n() const { return M.size(); }
    /// x^n - Σ M(j) x^{n-j}
    IntPolynomial polynomial() const;
};

/// Validates every hypothesis on M and derives It and E. Unconstrained entries
/// of E take free_signs[k] when given, +1 otherwise. Throws HypothesisViolation.
CriterionSequence make_criterion(const std::vector<long>& M, const std::vector<int>& free_signs = {});

struct CriterionRoot {
    AlgebraicReal beta;
    std::size_t interior_roots = 1; ///< roots of the polynomial inside (It(1), It(1)+1)
};

/// Root of the criterion polynomial in (It(1), It(1) + 1). When several roots
/// lie there the one passing verify_criterion_orbit is chosen.
CriterionRoot solve_criterion_beta(const CriterionSequence& c);

struct CriterionOrbitReport {
    std::vector<ZBetaElement> orbit; ///< f^0(1) .. f^{n-1}(1)
    std::size_t k = 0, p = 0;        ///< canonical shape of the expansion of 1
};

/// Exact orbit check: f^{j-1}(1) in I_{It(j)} for j < n, β f^{n-1}(1) - a(n) = 0
/// as coordinates, and a finite orbit afterwards. Throws VerificationFailure.
CriterionOrbitReport verify_criterion_orbit(const CriterionSequence& c, const AlgebraicReal& beta);

/// The map f_{β,E} built on the criterion ring.
GBetaMap criterion_map(const CriterionSequence& c, const AlgebraicReal& beta);

struct RemainderReport {
    Rational value;         ///< R_j(x)
    bool bound_holds = false; ///< |R_j(x)| < x^{-(j-1)}
    bool sign_holds = false;  ///< sign R_j(x) = s(j+1)
};

/// R_j(x) = Σ_{i=j}^{n-1} s(i+1) a(i+1) x^{-i} in exact arithmetic.
RemainderReport check_remainder_bounds(const CriterionSequence& c, const Rational& x, std::size_t j);

} // namespace betalab
