#include "betalab/zbeta.hpp"

#include <algorithm>
#include <sstream>

namespace betalab {

namespace {

const Rational& working_width() {
    static const Rational w(Integer(1), Integer(1) << 256);
    return w;
}

std::vector<Rational> powers(const Rational& x, int n) {
    std::vector<Rational> p(static_cast<std::size_t>(std::max(n, 1)));
    p[0] = 1;
    for (std::size_t i = 1; i < p.size(); ++i) p[i] = p[i - 1] * x;
    return p;
}

// Enclosure of Σ c_i x^i over x in [lo, hi].
std::pair<Rational, Rational> enclose(const std::vector<Rational>& c, const Rational& lo,
                                      const Rational& hi, const std::vector<Rational>* lo_pow,
                                      const std::vector<Rational>* hi_pow) {
    if (lo >= 0) {
        std::vector<Rational> lp, hp;
        if (!lo_pow) lp = powers(lo, static_cast<int>(c.size())), lo_pow = &lp;
        if (!hi_pow) hp = powers(hi, static_cast<int>(c.size())), hi_pow = &hp;
        Rational a = 0, b = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] > 0) {
                a += c[i] * (*lo_pow)[i];
                b += c[i] * (*hi_pow)[i];
            } else if (c[i] < 0) {
                a += c[i] * (*hi_pow)[i];
                b += c[i] * (*lo_pow)[i];
            }
        }
        return {a, b};
    }
    Rational a = 0, b = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Rational p[4] = {a * lo, a * hi, b * lo, b * hi};
        a = *std::min_element(p, p + 4) + *it;
        b = *std::max_element(p, p + 4) + *it;
    }
    return {a, b};
}

} // namespace

BetaRing::BetaRing(const AlgebraicReal& beta)
    : beta_(beta.refine(working_width())), modulus_(beta.defining().to_rational().monic()) {
    const int n = modulus_.degree();
    lo_pow_ = powers(beta_.lo(), n);
    hi_pow_ = powers(beta_.hi(), n);
    mid_pow_ = powers((beta_.lo() + beta_.hi()) / 2, n);
}

bool BetaRing::same_as(const BetaRing& other) const {
    if (this == &other) return true;
    return modulus_ == other.modulus_ && beta_.lo() <= other.beta_.hi() &&
           other.beta_.lo() <= beta_.hi();
}

Ring make_ring(const AlgebraicReal& beta) { return std::make_shared<const BetaRing>(beta); }

Ring make_ring(const IntPolynomial& poly, const Rational& lo, const Rational& hi) {
    return make_ring(AlgebraicReal(poly, lo, hi));
}

ZBetaElement::ZBetaElement(Ring ring, std::vector<Rational> coords) : ring_(std::move(ring)) {
    const int n = ring_->degree();
    RationalPolynomial p(std::move(coords));
    if (p.degree() >= n) {
        RationalPolynomial q, r;
        RationalPolynomial::divmod(p, ring_->modulus(), q, r);
        p = r;
    }
    coords_ = p.coeffs();
    coords_.resize(static_cast<std::size_t>(n));
}

ZBetaElement ZBetaElement::constant(const Ring& ring, const Rational& c) {
    return ZBetaElement(ring, std::vector<Rational>{c});
}

ZBetaElement ZBetaElement::generator(const Ring& ring) {
    return ZBetaElement(ring, std::vector<Rational>{0, 1});
}

bool ZBetaElement::is_zero_coords() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool ZBetaElement::is_integral() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
}

RationalPolynomial ZBetaElement::as_polynomial() const { return RationalPolynomial(coords_); }

static void check_ring(const ZBetaElement& a, const ZBetaElement& b) {
    if (!a.ring() || !b.ring()) throw RingMismatch("uninitialized element");
    if (a.ring() != b.ring() && !a.ring()->same_as(*b.ring()))
        throw RingMismatch("elements belong to different rings");
}

ZBetaElement ZBetaElement::operator-() const {
    ZBetaElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

ZBetaElement operator+(const ZBetaElement& a, const ZBetaElement& b) {
    check_ring(a, b);
    ZBetaElement r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
    return r;
}

ZBetaElement operator-(const ZBetaElement& a, const ZBetaElement& b) {
    check_ring(a, b);
    ZBetaElement r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] -= b.coords_[i];
    return r;
}

ZBetaElement operator*(const ZBetaElement& a, const ZBetaElement& b) {
    check_ring(a, b);
    const std::size_t n = a.coords_.size();
    std::vector<Rational> c(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i + j] += a.coords_[i] * b.coords_[j];
    }
    const auto& m = a.ring_->modulus().coeffs();
    for (std::size_t i = c.size(); i-- > n;) {
        if (c[i] == 0) continue;
        const Rational t = c[i];
        for (std::size_t j = 0; j <= n; ++j) c[i - n + j] -= t * m[j];
    }
    c.resize(n);
    ZBetaElement r;
    r.ring_ = a.ring_;
    r.coords_ = std::move(c);
    return r;
}

ZBetaElement operator*(const Rational& k, const ZBetaElement& a) {
    ZBetaElement r = a;
    for (auto& c : r.coords_) c *= k;
    return r;
}

ZBetaElement operator+(const ZBetaElement& a, const Rational& k) {
    ZBetaElement r = a;
    r.coords_[0] += k;
    return r;
}

ZBetaElement operator-(const ZBetaElement& a, const Rational& k) {
    ZBetaElement r = a;
    r.coords_[0] -= k;
    return r;
}

ZBetaElement ZBetaElement::inverse() const {
    if (sign() == 0) throw NotInvertible("element has value zero");
    RationalPolynomial modulus = ring_->modulus();
    const RationalPolynomial d = as_polynomial();
    // Drop any common factor: β is not a root of it since the value is nonzero.
    const RationalPolynomial g = RationalPolynomial::gcd(modulus, d);
    if (g.degree() > 0) {
        RationalPolynomial q, r;
        RationalPolynomial::divmod(modulus, g, q, r);
        modulus = q;
    }
    // Extended Euclid: track s with s*d ≡ r (mod modulus).
    RationalPolynomial r0 = modulus, r1 = d, s0, s1({Rational(1)});
    {
        RationalPolynomial q, r;
        RationalPolynomial::divmod(r1, modulus, q, r);
        r1 = r;
    }
    while (r1.degree() > 0) {
        RationalPolynomial q, r;
        RationalPolynomial::divmod(r0, r1, q, r);
        RationalPolynomial s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.is_zero()) throw NotInvertible("element shares a factor with the modulus");
    const Rational c = Rational(1) / r1.leading();
    return ZBetaElement(ring_, (c * s1).coeffs());
}

std::pair<Rational, Rational> ZBetaElement::enclosure() const {
    const auto& b = ring_->beta();
    return enclose(coords_, b.lo(), b.hi(), &ring_->lo_powers(), &ring_->hi_powers());
}

int ZBetaElement::sign() const {
    if (is_zero_coords()) return 0;
    const AlgebraicReal& beta = ring_->beta();
    if (auto e = beta.exact()) {
        Rational v = 0;
        for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) v = v * *e + *it;
        return sgn(v);
    }
    auto [a, b] = enclosure();
    if (a > 0) return 1;
    if (b < 0) return -1;
    // The value may be exactly zero when the modulus is reducible.
    const RationalPolynomial g = RationalPolynomial::gcd(as_polynomial(), beta.squarefree());
    if (g.degree() >= 1 && count_real_roots(sturm_sequence(g), beta.lo(), beta.hi()) >= 1) return 0;
    AlgebraicReal local = beta;
    for (;;) {
        local = local.refine(local.width() / (Integer(1) << 64));
        if (auto e = local.exact()) {
            Rational v = 0;
            for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) v = v * *e + *it;
            return sgn(v);
        }
        std::tie(a, b) = enclose(coords_, local.lo(), local.hi(), nullptr, nullptr);
        if (a > 0) return 1;
        if (b < 0) return -1;
    }
}

Order ZBetaElement::compare(const ZBetaElement& other) const {
    check_ring(*this, other);
    if (coords_ == other.coords_) return Order::Equal;
    const int s = (*this - other).sign();
    return s < 0 ? Order::Less : (s > 0 ? Order::Greater : Order::Equal);
}

Order ZBetaElement::compare(const Rational& q) const {
    const int s = (*this - q).sign();
    return s < 0 ? Order::Less : (s > 0 ? Order::Greater : Order::Equal);
}

double ZBetaElement::to_double() const {
    if (auto e = ring_->beta().exact()) {
        Rational v = 0;
        for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) v = v * *e + *it;
        return v.get_d();
    }
    Rational v = 0;
    const auto& mp = ring_->mid_powers();
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] != 0) v += coords_[i] * mp[i];
    return v.get_d();
}

std::string ZBetaElement::to_string(char var) const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const Rational& c = coords_[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << rational_to_string(mag);
            continue;
        }
        if (mag != 1) out << rational_to_string(mag) << "*";
        out << var;
        if (i > 1) out << "^" << i;
    }
    return first ? "0" : out.str();
}

} // namespace betalab
