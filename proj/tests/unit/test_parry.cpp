#include "helpers.hpp"

#include "betalab/errors.hpp"
#include "betalab/parry.hpp"

#include <doctest.h>

#include <complex>

using namespace betalab;
using namespace testing;

namespace {

// (z^{k+p} - z^k)(1 - Σ s(j)d(j) z^{-j}) summed in closed form over the period.
IntPolynomial parry_oracle(const Expansion& e) {
    const std::size_t k = e.shape.preperiod, p = e.shape.period;
    std::vector<Integer> c(k + p + 1, Integer(0));
    c[k + p] += 1;
    if (k == 0) c[0] -= 1;
    else c[k] -= 1;
    for (std::size_t j = 1; j <= k + p; ++j) {
        const long a = static_cast<long>(e.at(j).s) * e.at(j).d;
        c[k + p - j] -= a;
        if (j <= k) c[k - j] += a; // the preperiod part is multiplied by (z^{k+p} - z^k)
    }
    return IntPolynomial(c);
}

std::complex<double> series(const Expansion& e, std::complex<double> z, std::size_t N) {
    std::complex<double> acc = 1, zi = 1;
    for (std::size_t j = 1; j <= N; ++j) {
        zi /= z;
        acc -= static_cast<double>(e.at(j).s * e.at(j).d) * zi;
    }
    return acc;
}

} // namespace

TEST_SUITE("parry") {

TEST_CASE("worked Parry polynomials") {
    {
        const GBetaMap map(golden_ring(), {1, 1});
        const auto pcf = detect_pcf(map);
        REQUIRE(pcf);
        CHECK(build_parry_polynomial(pcf->expansion).poly == IntPolynomial{-1, -1, 1});
    }
    {
        const GBetaMap map(golden_ring(), {1, -1});
        const auto pcf = detect_pcf(map);
        REQUIRE(pcf);
        CHECK(build_parry_polynomial(pcf->expansion).poly == IntPolynomial{-1, 0, 2, 0, 0, -2, 1});
    }
    {
        const GBetaMap map(make_ring(AlgebraicReal::from_rational(Rational(2))), {1, -1});
        const auto pcf = detect_pcf(map);
        REQUIRE(pcf);
        CHECK(pcf->raw.shape.kind == ShapeKind::Finite);
        CHECK(build_parry_polynomial(pcf->expansion).poly == IntPolynomial{-2, 1});
    }
    const GBetaMap map(golden_ring(), {1, 1});
    CHECK_THROWS_AS(build_parry_polynomial(expand(map, map.element(Rational(1, 3)), 3)), NotInfinite);
}

TEST_CASE("worked criterion instance M = (3,1,-1)") {
    const CriterionSequence c = make_criterion({3, 1, -1});
    CHECK(c.itinerary == std::vector<int>{3, 0, 1});
    CHECK(c.E.size() == 4);
    CHECK(c.polynomial() == IntPolynomial{1, -1, -3, 1});
    const CriterionRoot r = solve_criterion_beta(c);
    CHECK(r.beta.to_double() == doctest::Approx(3.2143197433775348).epsilon(1e-14));
    CHECK(r.beta.compare(Rational(3)) == Order::Greater);
    CHECK(r.beta.compare(Rational(4)) == Order::Less);
    const CriterionOrbitReport rep = verify_criterion_orbit(c, r.beta);
    CHECK(rep.orbit.size() == 3);
    CHECK(rep.p >= 1);
    for (std::size_t j = 1; j < c.n(); ++j) {
        const RemainderReport rr = check_remainder_bounds(c, r.beta.refine(Rational(1, 1 << 30)).lo(), j);
        CHECK(rr.bound_holds);
        CHECK(rr.sign_holds);
    }
}

TEST_CASE("criterion hypotheses") {
    CHECK_THROWS_AS(make_criterion({2, 1}), HypothesisViolation);
    CHECK_THROWS_AS(make_criterion({3, -2}), HypothesisViolation);
    CHECK_THROWS_AS(make_criterion({5, 0, 1}), HypothesisViolation);
    CHECK_THROWS_AS(make_criterion({5, 2, 2}), HypothesisViolation);
    CHECK_THROWS_AS(make_criterion({}), HypothesisViolation);
    CHECK_NOTHROW(make_criterion({3, 1}));
}

TEST_CASE("property: Parry polynomial matches the closed-form oracle") {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        const auto M = random_criterion(rng, 2, 5, 20);
        const CriterionSequence c = make_criterion(M);
        const GBetaMap map = criterion_map(c, solve_criterion_beta(c).beta);
        const auto pcf = detect_pcf(map);
        REQUIRE(pcf);
        const ParryPolynomial P = build_parry_polynomial(pcf->expansion);
        const IntPolynomial oracle = parry_oracle(pcf->expansion);
        // equal up to an overall sign
        CHECK((P.poly == oracle || P.poly == IntPolynomial{0} - oracle));
        CHECK(P.k == pcf->k());
        CHECK(P.p == pcf->p());
        CHECK(!check_recursion_identity(map, *pcf, 3 * (pcf->orbit.size() + 1)).has_value());
    }
}

TEST_CASE("zero equivalence and factor identity") {
    const GBetaMap map(golden_ring(), {1, -1});
    const auto pcf = detect_pcf(map);
    REQUIRE(pcf);
    const ParryPolynomial P = build_parry_polynomial(pcf->expansion);
    const auto zs = all_roots(P.poly);
    int outside = 0;
    for (const auto& z : zs) {
        if (z.abs() <= 1.05) continue;
        ++outside;
        const auto r = verify_zero_equivalence(P, z, 400);
        CHECK(r.poly_vanishes);
        CHECK(r.series_vanishes);
        CHECK(std::abs(series(pcf->expansion, z.value(), 400)) < 1e-10);
    }
    CHECK(outside == 1);
    const auto r = verify_zero_equivalence(P, ComplexPoint(std::complex<double>(1.5, 0.7)), 400);
    CHECK_FALSE(r.poly_vanishes);
    CHECK(r.consistent());
    CHECK_THROWS_AS(verify_zero_equivalence(P, ComplexPoint(std::complex<double>(0.5, 0)), 400), InsideDisk);

    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        const std::complex<double> z = std::polar(1.1 + 2 * rng.unit(), 6.283185307179586 * rng.unit());
        const auto f = verify_factor_identity(map, *pcf, z, 400);
        CHECK(f.discrepancy < 1e-12);
        // independent left side
        CHECK(std::abs(f.lhs - series(pcf->raw, z, 400)) < 1e-12);
    }
}

TEST_CASE("orbit series coefficients") {
    const GBetaMap map(golden_ring(), {1, 1});
    const auto pcf = detect_pcf(map);
    REQUIRE(pcf);
    const OrbitSeries os = orbit_series(*pcf, 5);
    REQUIRE(os.c.size() == 6);
    CHECK(os.c[0] == doctest::Approx(1));
    CHECK(os.c[1] == doctest::Approx(kGolden - 1));
    for (std::size_t j = 0; j + 1 < os.c.size(); ++j)
        CHECK(kGolden * os.c[j] - os.steps[j].s * os.steps[j].d == doctest::Approx(os.c[j + 1]).epsilon(1e-12));
}

} // TEST_SUITE
