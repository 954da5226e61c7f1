#include "helpers.hpp"

#include "betalab/errors.hpp"
#include "betalab/roots.hpp"
#include "betalab/unimodal.hpp"

#include <doctest.h>

#include <functional>

using namespace betalab;
using namespace testing;

namespace {

using Map = PiecewiseLinearMap;

Map rational_map(const std::vector<Rational>& b, const std::vector<Rational>& v) { return Map::from_rationals(b, v); }

Map golden_tent() {
    const Ring r = golden_ring();
    const ZBetaElement half = ZBetaElement::constant(r, Rational(1, 2));
    const ZBetaElement b = ZBetaElement::generator(r);
    const ZBetaElement zero = ZBetaElement::constant(r, 0), one = ZBetaElement::constant(r, 1);
    return Map({zero, half, one}, {zero, half * b, zero});
}

// laps of f^n counted from a dense float sample
std::size_t sampled_laps(const std::function<double(double)>& f, double lo, double hi, int n, int grid) {
    std::size_t laps = 1;
    int dir = 0;
    double prev = 0;
    for (int i = 0; i <= grid; ++i) {
        double x = lo + (hi - lo) * i / grid;
        for (int k = 0; k < n; ++k) x = f(x);
        if (i > 0 && x != prev) {
            const int d = x > prev ? 1 : -1;
            if (dir != 0 && d != dir) ++laps;
            dir = d;
        }
        prev = x;
    }
    return laps;
}

} // namespace

TEST_SUITE("unimodal") {

TEST_CASE("map validation and evaluation") {
    CHECK_THROWS_AS(rational_map({0}, {0}), InvalidMap);
    CHECK_THROWS_AS(rational_map({0, 1}, {0}), InvalidMap);
    CHECK_THROWS_AS(rational_map({0, Rational(1, 2), Rational(1, 2), 1}, {0, 1, 1, 0}), InvalidMap);
    CHECK_THROWS_AS(rational_map({0, 1}, {0, 2}), InvalidMap);
    const Map t = rational_map({0, Rational(1, 2), 1}, {0, 1, 0});
    CHECK(t(ZBetaElement::constant(t.ring(), Rational(1, 4))).compare(Rational(1, 2)) == Order::Equal);
    CHECK(t(ZBetaElement::constant(t.ring(), Rational(3, 4))).compare(Rational(1, 2)) == Order::Equal);
    CHECK_THROWS_AS(t(ZBetaElement::constant(t.ring(), Rational(2))), OutOfRange);
    REQUIRE(t.laps().size() == 2);
    CHECK(t.laps()[0].direction == 1);
    CHECK(t.laps()[1].direction == -1);
    // a flat stretch joins the neighbouring lap
    const Map flat = rational_map({0, Rational(1, 4), Rational(1, 2), 1}, {0, Rational(1, 2), Rational(1, 2), 0});
    CHECK(flat.laps().size() == 2);
}

TEST_CASE("from_gbeta rejects a jump") {
    const GBetaMap tent(golden_ring(), {1, -1});
    const Map f = Map::from_gbeta(tent);
    CHECK(f.breakpoints().size() == 3);
    CHECK(f.values()[1].compare(Rational(1)) == Order::Equal);
    CHECK_THROWS_AS(Map::from_gbeta(GBetaMap(golden_ring(), {1, 1})), InvalidMap);
}

TEST_CASE("slope 2 tent: identity normal form and L(n) = 2^n") {
    const Map t = rational_map({0, Rational(1, 2), 1}, {0, 1, 0});
    const NormalForm nf = normalize(t);
    CHECK(nf.input_case == 1);
    CHECK(nf.output_case == 1);
    CHECK(nf.normalized == t);
    CHECK(nf.trim_iterations == 0);
    CHECK(nf.map.signs() == SignConfiguration{1, -1});
    const EntropyCheck ec = entropy_cross_check(nf, 20);
    for (std::size_t n = 1; n <= 20; ++n) {
        CHECK(ec.laps.laps[n - 1] == (Integer(1) << static_cast<unsigned>(n)));
        CHECK(ec.laps.estimates[n - 1] == std::log(2.0));
    }
    CHECK(ec.gap == 0);
}

TEST_CASE("golden tent: trimming, normal form and lap recurrence") {
    const Map g = golden_tent();
    const NormalForm nf = normalize(g);
    CHECK(nf.input_case == 1);
    CHECK(nf.trimmed.lo().compare(Rational(0)) == Order::Equal);
    CHECK(nf.trimmed.hi().to_double() == doctest::Approx(kGolden / 2).epsilon(1e-15));
    CHECK(nf.normalized == Map::from_gbeta(nf.map));
    CHECK(nf.map.beta().to_double() == doctest::Approx(kGolden).epsilon(1e-15));
    const LapReport rep = lap_entropy(nf.normalized, 16);
    CHECK(rep.laps[0] == 2);
    CHECK(rep.laps[1] == 4);
    for (std::size_t n = 3; n <= 16; ++n) CHECK(rep.laps[n - 1] == rep.laps[n - 2] + rep.laps[n - 3] + 1);
    // the successive ratio converges much faster than log L(n) / n
    CHECK(std::abs(rep.ratio_estimate - std::log(kGolden)) < 1e-3);
    CHECK(rep.estimate > std::log(kGolden));

    const double beta = kGolden;
    auto f = [beta](double x) { return x <= 1 / beta ? beta * x : 2 - beta * x; };
    for (int n = 1; n <= 9; ++n)
        CHECK(Integer(static_cast<long>(sampled_laps(f, 0, 1, n, 400000))) == rep.laps[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("the four cases normalize to the two model maps") {
    const Map G1 = Map::from_gbeta(GBetaMap(golden_ring(), {1, -1}));
    const Map G2 = Map::from_gbeta(GBetaMap(golden_ring(), {-1, 1}));
    const std::vector<std::pair<Map, int>> inputs{{G1, 1}, {G2, 2}, {reflect(G1), 3}, {reflect(G2), 4}};
    for (const auto& [g, expected] : inputs) {
        CAPTURE(expected);
        const NormalForm nf = normalize(g);
        CHECK(nf.input_case == expected);
        CHECK(nf.output_case == (expected == 1 || expected == 3 ? 1 : 2));
        CHECK(nf.conjugacy.flipped == (expected >= 3));
        CHECK(nf.normalized == (nf.output_case == 1 ? G1 : G2));
        CHECK(conjugate_back(nf.normalized, nf.conjugacy) == nf.trimmed);
        CHECK(lap_entropy(nf.normalized, 10).laps == lap_entropy(g, 10).laps);
    }
    // trimmed and reflected golden tent lands on the same model
    const NormalForm a = normalize(golden_tent());
    const NormalForm b = normalize(reflect(golden_tent()));
    CHECK(b.conjugacy.flipped);
    CHECK(b.trim_iterations > 0);
    CHECK(b.normalized == a.normalized);
    CHECK(conjugate_back(b.normalized, b.conjugacy) == b.trimmed);
}

TEST_CASE("hypothesis errors") {
    CHECK_THROWS_AS(normalize(rational_map({0, Rational(1, 2), 1}, {0, 1, Rational(1, 4)})), NotUniform);
    CHECK_THROWS_AS(normalize(rational_map({0, Rational(1, 2), 1}, {0, Rational(1, 2), 0})), NotExpanding);
    CHECK_THROWS_AS(normalize(rational_map({0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1},
                                           {0, Rational(1, 2), 0, Rational(1, 2), 0})),
                    NotUnimodal);
    // slope 3/2: the turning orbit has growing denominators
    CHECK_THROWS_AS(normalize(rational_map({0, Rational(1, 2), 1}, {0, Rational(3, 4), 0}), 60),
                    NotPostCriticallyFinite);
    const Map t = rational_map({0, Rational(1, 2), 1}, {0, 1, 0});
    LapOptions tight;
    tight.max_laps = 1000;
    CHECK_THROWS_AS(lap_entropy(t, 12, tight), ExplodedBreakpointCount);
    CHECK_THROWS_AS(lap_entropy(t, 1), OutOfRange);
}

TEST_CASE("monotone map has one lap") {
    const LapReport rep = lap_entropy(rational_map({0, Rational(1, 2), 1}, {0, Rational(1, 4), 1}), 8);
    for (const auto& L : rep.laps) CHECK(L == 1);
    CHECK(rep.estimate == 0);
}

TEST_CASE("slope value recovers a quadratic unit") {
    const Ring r = make_ring(IntPolynomial{-5, 0, 1}, Rational(2), Rational(3));
    const ZBetaElement lam(r, {Rational(1, 2), Rational(1, 2)});
    const AlgebraicReal v = slope_value(lam);
    CHECK(v.to_double() == doctest::Approx(kGolden).epsilon(1e-15));
    CHECK(v.defining() == IntPolynomial{-1, -1, 1});
}

TEST_CASE("property: lap estimate approaches log of the slope on PCF tents") {
    // tents whose slope is a root in (1, 2) of a small ±1 polynomial and whose turning orbit closes
    std::size_t used = 0;
    for (int mask = 0; mask < 729 && used < 12; ++mask) {
        std::vector<Integer> c{Integer(1)};
        int m = mask;
        for (int i = 0; i < 6; ++i, m /= 3) c.insert(c.begin(), Integer(m % 3 - 1));
        const IntPolynomial p(c);
        for (const AlgebraicReal& beta : real_roots_in(p, Rational(1), Rational(2))) {
            if (beta.compare(Rational(1)) != Order::Greater || beta.compare(Rational(2)) != Order::Less) continue;
            const GBetaMap map(make_ring(beta), {1, -1});
            if (!detect_pcf(map, 60)) continue;
            const NormalForm nf = normalize(Map::from_gbeta(map));
            const EntropyCheck ec = entropy_cross_check(nf, 14);
            CAPTURE(beta.to_double());
            // total variation of f^n is β^n and each lap contributes at most 1, so L(n) >= β^n
            for (std::size_t n = 1; n <= 14; ++n) CHECK(ec.laps.estimates[n - 1] >= ec.log_beta - 1e-12);
            // L(n) = C β^n (1 + o(1)); the constant grows as β approaches 1
            CHECK(ec.gap * 14 < 3);
            CHECK(std::abs(ec.laps.ratio_estimate - ec.log_beta) < 0.1);
            ++used;
        }
    }
    CHECK(used >= 5);
}

} // TEST_SUITE
