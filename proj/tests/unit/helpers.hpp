#pragma once

#include "betalab/gbeta_map.hpp"
#include "betalab/spectra.hpp"

#include <cmath>

namespace testing {

using namespace betalab;

inline Ring golden_ring() { return make_ring(IntPolynomial{-1, -1, 1}, Rational(1), Rational(2)); }
inline Ring cubic_ring() { return make_ring(IntPolynomial{1, -1, -3, 1}, Rational(3), Rational(4)); }
inline const double kGolden = (1 + std::sqrt(5.0)) / 2;

// mpq_class(n, d) does not reduce
inline Rational frac(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Rational random_rational(Rng& rng, long num_max, long den_max) {
    return frac(rng.between(-num_max, num_max), rng.between(1, den_max));
}

inline ZBetaElement random_element(Rng& rng, const Ring& r, long num_max = 9, long den_max = 5) {
    std::vector<Rational> c;
    for (int i = 0; i < r->degree(); ++i) c.push_back(random_rational(rng, num_max, den_max));
    return ZBetaElement(r, c);
}

} // namespace testing
