#include "betalab/parry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace betalab {

ParryPolynomial build_parry_polynomial(const Expansion& exp) {
    if (!exp.is_infinite())
        throw NotInfinite(std::string("expansion shape is ") + to_string(exp.shape.kind));
    const std::size_t k = exp.shape.preperiod, p = exp.shape.period, D = k + p;
    std::vector<Integer> c(D + 1);
    c[D] += 1;
    for (std::size_t j = 1; j <= D; ++j) {
        const ExpansionStep st = exp.at(j);
        c[D - j] -= st.s * st.d;
    }
    c[k] -= 1;
    for (std::size_t j = 1; j <= k; ++j) {
        const ExpansionStep st = exp.at(j);
        c[k - j] += st.s * st.d;
    }
    ParryPolynomial P;
    P.poly = IntPolynomial(std::move(c));
    P.k = k;
    P.p = p;
    P.expansion = exp;
    return P;
}

namespace {

int max_digit(const Expansion& e) {
    int m = 1;
    for (const auto& st : e.steps) m = std::max(m, st.d);
    return m;
}

double tail_bound(double digit_bound, double r, std::size_t N) {
    return digit_bound * std::pow(r, -static_cast<double>(N)) / (1.0 - 1.0 / r);
}

} // namespace

ZeroEquivalenceReport verify_zero_equivalence(const ParryPolynomial& P, const ComplexPoint& z,
                                              std::size_t N, double poly_tol, double series_tol) {
    const double r = z.abs();
    if (!(z.wide_abs() > 1)) throw InsideDisk("|z| = " + std::to_string(r) + " <= 1");
    ZeroEquivalenceReport rep;
    rep.poly_residual = residual(P.poly, z);
    const std::complex<double> zinv = 1.0 / z.value();
    std::complex<double> pw = 1.0, sum = 1.0;
    for (std::size_t j = 1; j <= N; ++j) {
        pw *= zinv;
        const ExpansionStep st = P.expansion.at(j);
        sum -= static_cast<double>(st.s * st.d) * pw;
    }
    rep.series_residual = std::abs(sum);
    rep.tail_bound = tail_bound(max_digit(P.expansion), r, N);
    rep.poly_vanishes = rep.poly_residual < poly_tol;
    rep.series_vanishes = rep.series_residual < series_tol + 10 * rep.tail_bound;
    return rep;
}

OrbitSeries orbit_series(const PcfResult& pcf, std::size_t N) {
    OrbitSeries out;
    std::vector<double> values(pcf.orbit.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = pcf.orbit[i].to_double();
    out.steps = pcf.raw.take(N + 1);
    out.c.resize(N + 1);
    for (std::size_t j = 0; j <= N; ++j) {
        const std::size_t idx = j < values.size()
                                    ? j
                                    : pcf.orbit_preperiod + (j - pcf.orbit_preperiod) % pcf.orbit_period;
        out.c[j] = out.steps[j].s * values[idx];
    }
    return out;
}

namespace {

FactorIdentityReport factor_identity(const OrbitSeries& os, double beta, int digit_bound,
                                     std::complex<double> z, std::size_t N) {
    const double r = std::abs(z);
    if (!(r > 1)) throw InsideDisk("|z| = " + std::to_string(r) + " <= 1");
    FactorIdentityReport rep;
    const std::complex<double> zinv = 1.0 / z;
    std::complex<double> pw = 1.0, lhs = 1.0, S = os.c[0];
    for (std::size_t j = 1; j <= N; ++j) {
        pw *= zinv;
        lhs -= static_cast<double>(os.steps[j - 1].s * os.steps[j - 1].d) * pw;
        S += os.c[j] * pw;
    }
    rep.lhs = lhs;
    rep.rhs = (1.0 - beta * zinv) * S;
    rep.predicted = beta * os.c[N] * pw * zinv;
    rep.discrepancy = std::abs(rep.lhs - rep.rhs - rep.predicted);
    rep.tail_bound = tail_bound(digit_bound, r, N);
    return rep;
}

} // namespace

FactorIdentityReport verify_factor_identity(const GBetaMap& map, const PcfResult& pcf,
                                            std::complex<double> z, std::size_t N) {
    if (!(std::abs(z) > 1)) throw InsideDisk("|z| <= 1");
    return factor_identity(orbit_series(pcf, N), map.beta().to_double(), map.m() + 1, z, N);
}

FactorIdentityReport verify_factor_identity(const GBetaMap& map, std::complex<double> z, std::size_t N) {
    if (!(std::abs(z) > 1)) throw InsideDisk("|z| <= 1");
    if (auto pcf = detect_pcf(map, std::max<std::size_t>(2 * N + 2, 64)))
        return verify_factor_identity(map, *pcf, z, N);
    OrbitSeries os;
    ZBetaElement x = map.one();
    int s = 1;
    std::vector<double> points;
    for (std::size_t j = 0; j <= N + 1; ++j) {
        points.push_back(x.to_double());
        StepResult r = step(map, x);
        os.steps.push_back({s, r.d});
        s *= r.e;
        x = std::move(r.next);
    }
    for (std::size_t j = 0; j <= N; ++j) os.c.push_back(os.steps[j].s * points[j]);
    return factor_identity(os, map.beta().to_double(), map.m() + 1, z, N);
}

std::optional<std::size_t> check_recursion_identity(const GBetaMap& map, const PcfResult& pcf,
                                                    std::size_t count) {
    const ZBetaElement beta = ZBetaElement::generator(map.ring());
    for (std::size_t j = 0; j < count; ++j) {
        const ExpansionStep a = pcf.raw.at(j + 1), b = pcf.raw.at(j + 2);
        const ZBetaElement cj = Rational(a.s) * pcf.point(j);
        const ZBetaElement cj1 = Rational(b.s) * pcf.point(j + 1);
        const ZBetaElement lhs = beta * cj - Rational(a.s * a.d);
        if (!(lhs == cj1) && lhs.compare(cj1) != Order::Equal) return j;
    }
    return std::nullopt;
}

// ------------------------------------------------------------ criterion

IntPolynomial CriterionSequence::polynomial() const {
    const std::size_t n = M.size();
    std::vector<Integer> c(n + 1);
    c[n] = 1;
    for (std::size_t j = 1; j <= n; ++j) c[n - j] = -M[j - 1];
    return IntPolynomial(std::move(c));
}

CriterionSequence make_criterion(const std::vector<long>& M, const std::vector<int>& free_signs) {
    if (M.empty()) throw HypothesisViolation("M is empty");
    CriterionSequence c;
    c.M = M;
    const std::size_t n = M.size();
    for (long v : M) {
        if (v == 0) throw HypothesisViolation("entries must be nonzero");
        c.a.push_back(std::labs(v));
        c.s.push_back(v > 0 ? 1 : -1);
    }
    if (M[0] < 2) throw HypothesisViolation("M(1) >= 2 required, got " + std::to_string(M[0]));
    if (std::set<long>(M.begin(), M.end()).size() != n) throw HypothesisViolation("entries must be distinct");
    for (std::size_t j = 1; j < n; ++j)
        if (!(c.a[j] + 1 < M[0]))
            throw HypothesisViolation("|M(" + std::to_string(j + 1) + ")| + 1 < M(1) fails");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (c.a[j] == c.a[k] - 1)
                throw HypothesisViolation("|M(" + std::to_string(j + 1) + ")| = |M(" + std::to_string(k + 1) +
                                          ")| - 1");
    for (std::size_t j = 0; j + 1 < n; ++j)
        c.itinerary.push_back(static_cast<int>(c.s[j + 1] == c.s[j] ? c.a[j] : c.a[j] - 1));
    c.itinerary.push_back(static_cast<int>(c.a[n - 1]));
    const int it1 = c.itinerary[0];
    for (std::size_t j = 1; j < n; ++j)
        if (!(it1 > c.a[j]))
            throw HypothesisViolation("It(1) > a(" + std::to_string(j + 1) + ") fails");
    c.E.assign(static_cast<std::size_t>(it1 + 1), 1);
    c.constrained.assign(c.E.size(), 0);
    for (std::size_t k = 0; k < c.E.size() && k < free_signs.size(); ++k) {
        if (free_signs[k] != 1 && free_signs[k] != -1) throw HypothesisViolation("free signs must be +1 or -1");
        c.E[k] = free_signs[k];
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (c.a[j] == 0 && c.s[j + 1] != c.s[j]) throw HypothesisViolation("a(j) = 0 requires s(j+1) = s(j)");
        const auto k = static_cast<std::size_t>(c.itinerary[j]);
        const int need = c.s[j + 1] * c.s[j];
        if (c.constrained[k] && c.E[k] != need)
            throw HypothesisViolation("no sign configuration: E(" + std::to_string(k) + ") must be both signs");
        c.E[k] = need;
        c.constrained[k] = 1;
    }
    return c;
}

GBetaMap criterion_map(const CriterionSequence& c, const AlgebraicReal& beta) {
    return GBetaMap(make_ring(beta), c.E);
}

CriterionOrbitReport verify_criterion_orbit(const CriterionSequence& c, const AlgebraicReal& beta) {
    const std::size_t n = c.n();
    std::optional<GBetaMap> map;
    try {
        map.emplace(criterion_map(c, beta));
    } catch (const Error& e) {
        throw VerificationFailure(0, e.what());
    }
    CriterionOrbitReport rep;
    ZBetaElement x = map->one();
    for (std::size_t j = 1; j < n; ++j) {
        rep.orbit.push_back(x);
        const int k = classify(*map, x);
        if (k != c.itinerary[j - 1])
            throw VerificationFailure(j, "f^" + std::to_string(j - 1) + "(1) lies in I_" + std::to_string(k) +
                                             ", expected I_" + std::to_string(c.itinerary[j - 1]));
        x = step(*map, x).next;
    }
    rep.orbit.push_back(x);
    const ZBetaElement gap = ZBetaElement::generator(map->ring()) * x - Rational(c.a[n - 1]);
    if (!gap.is_zero_coords())
        throw VerificationFailure(n, "beta * f^{n-1}(1) - a(n) = " + gap.to_string() + " is not zero");
    auto pcf = detect_pcf(*map);
    if (!pcf) throw VerificationFailure(n + 1, "orbit of 1 is not finite within the step budget");
    rep.k = pcf->k();
    rep.p = pcf->p();
    return rep;
}

CriterionRoot solve_criterion_beta(const CriterionSequence& c) {
    const Rational lo(c.itinerary[0]), hi(c.itinerary[0] + 1);
    std::vector<AlgebraicReal> roots = real_roots_in(c.polynomial(), lo, hi, true);
    if (roots.empty())
        throw IsolationFailure("no root of " + c.polynomial().to_string('x') + " in (" + rational_to_string(lo) +
                               ", " + rational_to_string(hi) + ")");
    if (roots.size() == 1) return {roots.front(), 1};
    for (const auto& r : roots) {
        try {
            verify_criterion_orbit(c, r);
            return {r, roots.size()};
        } catch (const VerificationFailure&) {
        }
    }
    throw IsolationFailure("none of the " + std::to_string(roots.size()) + " interior roots passes the orbit check");
}

RemainderReport check_remainder_bounds(const CriterionSequence& c, const Rational& x, std::size_t j) {
    const std::size_t n = c.n();
    if (j < 1 || j + 1 > n) throw OutOfRange("remainder index must lie in 1..n-1");
    if (x <= 0) throw OutOfRange("x must be positive");
    RemainderReport rep;
    Rational xinv = Rational(1) / x, pw = 1;
    for (std::size_t i = 1; i < j; ++i) pw *= xinv;
    const Rational bound = pw; // x^{-(j-1)}
    rep.value = 0;
    for (std::size_t i = j; i <= n - 1; ++i) {
        pw *= xinv;
        rep.value += Rational(c.s[i] * c.a[i]) * pw;
    }
    rep.bound_holds = abs(rep.value) < bound;
    rep.sign_holds = sgn(rep.value) == c.s[j];
    return rep;
}

} // namespace betalab
