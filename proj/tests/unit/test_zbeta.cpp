#include "helpers.hpp"

#include "betalab/errors.hpp"
#include "betalab/zbeta.hpp"

#include <doctest.h>

using namespace betalab;
using namespace testing;

TEST_SUITE("zbeta") {

TEST_CASE("golden ring arithmetic") {
    const Ring r = golden_ring();
    const ZBetaElement b = ZBetaElement::generator(r);
    CHECK(b * b == b + Rational(1));
    CHECK(b.inverse() == b - Rational(1));
    CHECK((b * b - Rational(3) * b + Rational(1)).sign() == -1);
    CHECK(b.to_double() == doctest::Approx(kGolden).epsilon(1e-15));
    CHECK(b.to_string() == "b");
    CHECK((b * b).to_string() == "1 + b");
}

TEST_CASE("cubic comparison beta^2 against 3 beta + 1") {
    const Ring r = cubic_ring();
    const ZBetaElement b = ZBetaElement::generator(r);
    CHECK((b * b).compare(Rational(3) * b + Rational(1)) == Order::Less);
    CHECK((b * b * b) == Rational(3) * (b * b) + b - Rational(1));
}

TEST_CASE("reducible modulus: zero value with nonzero coordinates") {
    // sqrt(2) as a root of (z^2 - 2)(z - 3)
    const Ring r = make_ring(IntPolynomial{6, -2, -3, 1}, Rational(1), Rational(2));
    const ZBetaElement b = ZBetaElement::generator(r);
    const ZBetaElement z = b * b - Rational(2);
    CHECK_FALSE(z.is_zero_coords());
    CHECK(z.sign() == 0);
    CHECK(z.compare(Rational(0)) == Order::Equal);
    CHECK_THROWS_AS(z.inverse(), NotInvertible);
    // b - 1 is a unit even though the modulus factors
    const ZBetaElement u = b - Rational(1);
    CHECK((u * u.inverse() - Rational(1)).sign() == 0);
}

TEST_CASE("cross-ring comparison is rejected") {
    const ZBetaElement a = ZBetaElement::generator(golden_ring());
    const ZBetaElement c = ZBetaElement::generator(cubic_ring());
    CHECK_THROWS_AS(a.compare(c), RingMismatch);
}

TEST_CASE("property: field operations agree with floating point") {
    Rng rng(2024);
    for (const Ring& r : {golden_ring(), cubic_ring()}) {
        for (int t = 0; t < 150; ++t) {
            const ZBetaElement x = random_element(rng, r), y = random_element(rng, r);
            const double xd = x.to_double(), yd = y.to_double();
            const double scale = 1 + std::abs(xd) * std::abs(yd);
            CHECK(std::abs((x * y).to_double() - xd * yd) <= 1e-12 * scale);
            CHECK(std::abs((x + y).to_double() - (xd + yd)) <= 1e-12 * (1 + std::abs(xd) + std::abs(yd)));
            if (y.sign() != 0) CHECK((x / y) * y == x);
            if (std::abs(xd - yd) > 1e-9) CHECK(x.compare(y) == (xd < yd ? Order::Less : Order::Greater));
            CHECK(x.compare(x) == Order::Equal);
            const auto [lo, hi] = x.enclosure();
            CHECK(lo <= hi);
            CHECK(lo.get_d() <= xd + 1e-12);
            CHECK(hi.get_d() >= xd - 1e-12);
        }
    }
}

} // TEST_SUITE
