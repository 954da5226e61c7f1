#include "betalab/unimodal.hpp"

#include "betalab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace betalab {

namespace {

bool eq(const ZBetaElement& a, const ZBetaElement& b) { return a.compare(b) == Order::Equal; }
bool lt(const ZBetaElement& a, const ZBetaElement& b) { return a.compare(b) == Order::Less; }
const ZBetaElement& min_of(const ZBetaElement& a, const ZBetaElement& b) { return lt(b, a) ? b : a; }
const ZBetaElement& max_of(const ZBetaElement& a, const ZBetaElement& b) { return lt(a, b) ? b : a; }

Ring rational_ring() {
    static const Ring r = make_ring(AlgebraicReal::from_rational(Rational(2)));
    return r;
}

double log2_of(const Integer& L) {
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, L.get_mpz_t());
    return static_cast<double>(e) + std::log2(mant);
}

} // namespace

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<ZBetaElement> breakpoints, std::vector<ZBetaElement> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2) throw InvalidMap("need at least two breakpoints");
    if (values_.size() != breakpoints_.size()) throw InvalidMap("breakpoints and values differ in count");
    const Ring& r = breakpoints_.front().ring();
    for (const auto* v : {&breakpoints_, &values_})
        for (const auto& x : *v)
            if (!x.ring() || !x.ring()->same_as(*r)) throw RingMismatch("map coordinates from different fields");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!lt(breakpoints_[i], breakpoints_[i + 1])) throw InvalidMap("breakpoints must increase strictly");
    for (const auto& v : values_)
        if (lt(v, lo()) || lt(hi(), v)) throw InvalidMap("value " + v.to_string() + " outside the domain");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        slopes_.push_back((values_[i + 1] - values_[i]) / (breakpoints_[i + 1] - breakpoints_[i]));
}

PiecewiseLinearMap PiecewiseLinearMap::from_rationals(const std::vector<Rational>& breakpoints,
                                                      const std::vector<Rational>& values) {
    const Ring r = rational_ring();
    std::vector<ZBetaElement> b, v;
    for (const auto& q : breakpoints) b.push_back(ZBetaElement::constant(r, q));
    for (const auto& q : values) v.push_back(ZBetaElement::constant(r, q));
    return PiecewiseLinearMap(std::move(b), std::move(v));
}

PiecewiseLinearMap PiecewiseLinearMap::from_gbeta(const GBetaMap& map) {
    const Ring& r = map.ring();
    const ZBetaElement inv = ZBetaElement::generator(r).inverse();
    const ZBetaElement zero = map.element(0), one = map.one();
    std::vector<ZBetaElement> b, v;
    const int m = map.m();
    for (int k = 0; k <= m; ++k) {
        b.push_back(Rational(k) * inv);
        const ZBetaElement left = map.sign(k) == 1 ? zero : one;
        if (k > 0 && !eq(left, v.back()))
            throw InvalidMap("f_{beta,E} jumps at k/beta for k = " + std::to_string(k));
        if (k == 0) v.push_back(left);
        const ZBetaElement right = k == m ? step(map, one).next : (map.sign(k) == 1 ? one : zero);
        v.push_back(right);
    }
    b.push_back(one);
    return PiecewiseLinearMap(std::move(b), std::move(v));
}

ZBetaElement PiecewiseLinearMap::operator()(const ZBetaElement& x) const {
    if (lt(x, lo()) || lt(hi(), x)) throw OutOfRange("point " + x.to_string() + " outside the domain");
    std::size_t a = 0, b = breakpoints_.size() - 1;
    while (b - a > 1) {
        const std::size_t mid = (a + b) / 2;
        if (lt(x, breakpoints_[mid])) b = mid;
        else a = mid;
    }
    return values_[a] + slopes_[a] * (x - breakpoints_[a]);
}

std::vector<PiecewiseLinearMap::Lap> PiecewiseLinearMap::laps() const {
    std::vector<Lap> out;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        const int d = slopes_[i].sign();
        if (!out.empty() && (d == 0 || out.back().direction == 0 || d == out.back().direction)) {
            out.back().last = i + 1;
            if (out.back().direction == 0) out.back().direction = d;
        } else {
            out.push_back({i, i + 1, d});
        }
    }
    return out;
}

PiecewiseLinearMap PiecewiseLinearMap::restrict_to(const ZBetaElement& a, const ZBetaElement& b) const {
    if (!lt(a, b) || lt(a, lo()) || lt(hi(), b)) throw OutOfRange("restriction interval not inside the domain");
    std::vector<ZBetaElement> bp{a}, v{(*this)(a)};
    for (const auto& x : breakpoints_)
        if (lt(a, x) && lt(x, b)) {
            bp.push_back(x);
            v.push_back((*this)(x));
        }
    bp.push_back(b);
    v.push_back((*this)(b));
    return PiecewiseLinearMap(std::move(bp), std::move(v));
}

bool operator==(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g) {
    if (f.breakpoints_.size() != g.breakpoints_.size()) return false;
    for (std::size_t i = 0; i < f.breakpoints_.size(); ++i)
        if (!eq(f.breakpoints_[i], g.breakpoints_[i]) || !eq(f.values_[i], g.values_[i])) return false;
    return true;
}

PiecewiseLinearMap reflect(const PiecewiseLinearMap& f) {
    std::vector<ZBetaElement> b, v;
    for (std::size_t i = f.breakpoints().size(); i-- > 0;) {
        b.push_back((-f.breakpoints()[i]) + Rational(1));
        v.push_back((-f.values()[i]) + Rational(1));
    }
    return PiecewiseLinearMap(std::move(b), std::move(v));
}

ZBetaElement Conjugacy::apply(const ZBetaElement& x) const {
    const ZBetaElement u = (x - offset) / scale;
    return flipped ? (-u) + Rational(1) : u;
}

ZBetaElement Conjugacy::invert(const ZBetaElement& y) const {
    const ZBetaElement u = flipped ? (-y) + Rational(1) : y;
    return u * scale + offset;
}

namespace {

PiecewiseLinearMap transport(const PiecewiseLinearMap& f, bool flipped,
                             const std::function<ZBetaElement(const ZBetaElement&)>& phi) {
    std::vector<ZBetaElement> b, v;
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
        b.push_back(phi(f.breakpoints()[i]));
        v.push_back(phi(f.values()[i]));
    }
    if (flipped) {
        std::reverse(b.begin(), b.end());
        std::reverse(v.begin(), v.end());
    }
    return PiecewiseLinearMap(std::move(b), std::move(v));
}

} // namespace

PiecewiseLinearMap conjugate(const PiecewiseLinearMap& f, const Conjugacy& c) {
    return transport(f, c.flipped, [&](const ZBetaElement& x) { return c.apply(x); });
}

PiecewiseLinearMap conjugate_back(const PiecewiseLinearMap& f, const Conjugacy& c) {
    return transport(f, c.flipped, [&](const ZBetaElement& x) { return c.invert(x); });
}

AlgebraicReal slope_value(const ZBetaElement& lambda) {
    const auto& cs = lambda.coords();
    bool rational = true;
    for (std::size_t i = 1; i < cs.size(); ++i)
        if (cs[i] != 0) rational = false;
    if (rational) return AlgebraicReal::from_rational(cs.empty() ? Rational(0) : cs[0]);

    // characteristic polynomial of multiplication by λ (Faddeev–LeVerrier)
    const Ring& r = lambda.ring();
    const std::size_t d = static_cast<std::size_t>(r->degree());
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> e(d, Rational(0));
        e[j] = 1;
        const ZBetaElement col = lambda * ZBetaElement(r, e);
        for (std::size_t i = 0; i < d && i < col.coords().size(); ++i) A[i][j] = col.coords()[i];
    }
    auto mul = [&](const std::vector<std::vector<Rational>>& X, const std::vector<std::vector<Rational>>& Y) {
        std::vector<std::vector<Rational>> Z(d, std::vector<Rational>(d, Rational(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                if (X[i][k] != 0)
                    for (std::size_t j = 0; j < d; ++j) Z[i][j] += X[i][k] * Y[k][j];
        return Z;
    };
    std::vector<Rational> c(d + 1, Rational(0));
    c[d] = 1;
    std::vector<std::vector<Rational>> Mk(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t k = 1; k <= d; ++k) {
        Mk = mul(A, Mk);
        for (std::size_t i = 0; i < d; ++i) Mk[i][i] += c[d - k + 1];
        const auto AM = mul(A, Mk);
        Rational tr = 0;
        for (std::size_t i = 0; i < d; ++i) tr += AM[i][i];
        c[d - k] = -tr / Rational(static_cast<long>(k));
    }
    Integer den = 1;
    for (auto& q : c) {
        q.canonicalize();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
    std::vector<Integer> ic;
    for (const auto& q : c) ic.push_back(Integer(q * den));
    const auto [lo, hi] = lambda.enclosure();
    return AlgebraicReal(IntPolynomial(ic), lo, hi);
}

std::optional<std::vector<ZBetaElement>> turning_orbit(const PiecewiseLinearMap& f, std::size_t max_steps) {
    const auto laps = f.laps();
    if (laps.size() != 2) throw NotUnimodal("expected exactly one turning point, found " + std::to_string(laps.size() - 1));
    std::vector<ZBetaElement> orbit{f.breakpoints()[laps[0].last]};
    for (std::size_t i = 0; i < max_steps; ++i) {
        ZBetaElement y = f(orbit.back());
        for (const auto& x : orbit)
            if (eq(x, y)) return orbit;
        orbit.push_back(std::move(y));
    }
    return std::nullopt;
}

NormalForm normalize(const PiecewiseLinearMap& g, std::size_t max_steps) {
    const ZBetaElement lambda = g.slopes().front().sign() < 0 ? -g.slopes().front() : g.slopes().front();
    for (const auto& s : g.slopes()) {
        const ZBetaElement a = s.sign() < 0 ? -s : s;
        if (!eq(a, lambda)) throw NotUniform("slopes " + lambda.to_string() + " and " + a.to_string() + " differ in modulus");
    }
    if (lambda.compare(Rational(1)) != Order::Greater) throw NotExpanding("slope modulus " + lambda.to_string() + " <= 1");
    if (lambda.compare(Rational(2)) == Order::Greater) throw OutOfRange("slope modulus above 2");
    const auto laps = g.laps();
    if (laps.size() != 2) throw NotUnimodal(std::to_string(laps.size()) + " laps, expected 2");
    const ZBetaElement c = g.breakpoints()[laps[0].last];
    if (!turning_orbit(g, max_steps)) throw NotPostCriticallyFinite("turning-point orbit did not close");

    // Λ as the stable image of the domain
    ZBetaElement a = g.lo(), b = g.hi();
    std::size_t iters = 0;
    for (;; ++iters) {
        if (iters > max_steps) throw NotPostCriticallyFinite("trimmed interval did not stabilize");
        ZBetaElement fa = g(a), fb = g(b);
        ZBetaElement lo = min_of(fa, fb), hi = max_of(fa, fb);
        if (lt(a, c) && lt(c, b)) {
            const ZBetaElement fc = g(c);
            lo = min_of(lo, fc);
            hi = max_of(hi, fc);
        }
        if (eq(lo, a) && eq(hi, b)) break;
        a = lo;
        b = hi;
    }
    if (!(lt(a, c) && lt(c, b))) throw NotUnimodal("map is monotone on the trimmed interval");

    const PiecewiseLinearMap trimmed = g.restrict_to(a, b);
    Conjugacy phi{a, b - a, false};
    const PiecewiseLinearMap G = conjugate(trimmed, phi);
    const ZBetaElement cc = phi.apply(c);
    const ZBetaElement G0 = G(G.lo()), Gc = G(cc), G1 = G(G.hi());
    auto is01 = [](const ZBetaElement& x, const ZBetaElement& y) {
        return (x.compare(Rational(0)) == Order::Equal && y.compare(Rational(1)) == Order::Equal) ||
               (x.compare(Rational(1)) == Order::Equal && y.compare(Rational(0)) == Order::Equal);
    };
    const int dir = laps[0].direction;
    int input_case = 0;
    if (is01(G0, Gc)) input_case = dir > 0 ? 1 : 2;
    else if (is01(Gc, G1)) input_case = dir > 0 ? 4 : 3;
    else throw InvalidMap("normalized map has no full branch");

    // reflection swaps the branch order and reverses orientation: 3 -> 1, 4 -> 2
    if (input_case >= 3) phi.flipped = true;
    const int output_case = input_case == 1 || input_case == 3 ? 1 : 2;
    PiecewiseLinearMap normalized = input_case >= 3 ? conjugate(trimmed, phi) : G;
    const SignConfiguration E = output_case == 1 ? SignConfiguration{1, -1} : SignConfiguration{-1, 1};

    GBetaMap map(make_ring(slope_value(lambda)), E);
    // the normal form must coincide with f_{λ,E}: turning point 1/λ, first branch full
    const auto& nb = normalized.breakpoints();
    if (nb.size() != 3 || !eq(lambda * nb[1], normalized.lo() + Rational(1)) ||
        normalized.slopes()[0].sign() != E[0])
        throw InvalidMap("normalized map is not a generalized beta-transformation");
    if (!detect_pcf(map, max_steps)) throw NotPostCriticallyFinite("normal form orbit of 1 did not close");
    return NormalForm{std::move(map), std::move(normalized), trimmed, phi, input_case, output_case, iters};
}

LapReport lap_entropy(const PiecewiseLinearMap& f, std::size_t n_max, const LapOptions& opt) {
    if (n_max < 2) throw OutOfRange("n_max >= 2 required");
    struct Piece {
        ZBetaElement lo, hi;
    };
    std::vector<Piece> pieces;
    for (const auto& lap : f.laps()) pieces.push_back({f.breakpoints()[lap.first], f.breakpoints()[lap.last]});

    struct Entry {
        ZBetaElement lo, hi;
        Integer mult;
    };
    std::vector<Entry> state;
    for (const auto& p : pieces) {
        const ZBetaElement u = f(p.lo), v = f(p.hi);
        state.push_back({min_of(u, v), max_of(u, v), Integer(1)});
    }
    LapReport rep;
    auto record = [&](std::size_t n) {
        Integer L = 0;
        for (const auto& e : state) L += e.mult;
        if (L > opt.max_laps) throw ExplodedBreakpointCount("L(" + std::to_string(n) + ") = " + L.get_str() + " exceeds the cap");
        rep.laps.push_back(L);
        rep.estimates.push_back(log2_of(L) / static_cast<double>(n) * std::log(2.0));
    };
    record(1);
    for (std::size_t n = 2; n <= n_max; ++n) {
        std::vector<Entry> next;
        std::map<std::string, std::size_t> index;
        auto add = [&](ZBetaElement lo, ZBetaElement hi, const Integer& mult) {
            const std::string key = lo.to_string() + "|" + hi.to_string();
            auto [it, fresh] = index.emplace(key, next.size());
            if (fresh) {
                next.push_back({std::move(lo), std::move(hi), mult});
                if (next.size() > opt.max_intervals)
                    throw ExplodedBreakpointCount("more than " + std::to_string(opt.max_intervals) + " distinct lap images");
            } else {
                next[it->second].mult += mult;
            }
        };
        for (const auto& e : state) {
            if (eq(e.lo, e.hi)) { // constant stretch stays one lap
                const ZBetaElement y = f(e.lo);
                add(y, y, e.mult);
                continue;
            }
            for (const auto& p : pieces) {
                const ZBetaElement& lo = max_of(e.lo, p.lo);
                const ZBetaElement& hi = min_of(e.hi, p.hi);
                if (!lt(lo, hi)) continue;
                const ZBetaElement u = f(lo), v = f(hi);
                add(min_of(u, v), max_of(u, v), e.mult);
            }
        }
        state = std::move(next);
        record(n);
    }
    rep.estimate = rep.estimates.back();
    const auto k = rep.laps.size();
    rep.ratio_estimate = (log2_of(rep.laps[k - 1]) - log2_of(rep.laps[k - 2])) * std::log(2.0);
    rep.distinct_images = state.size();
    return rep;
}

EntropyCheck entropy_cross_check(const NormalForm& nf, std::size_t n_max, const LapOptions& opt) {
    EntropyCheck out;
    out.laps = lap_entropy(nf.normalized, n_max, opt);
    out.log_beta = std::log(nf.map.beta().to_double());
    out.gap = std::abs(out.laps.estimate - out.log_beta);
    return out;
}

} // namespace betalab
