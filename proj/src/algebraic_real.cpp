#include "betalab/algebraic_real.hpp"

#include <cmath>

namespace betalab {

AlgebraicReal::AlgebraicReal(IntPolynomial defining, Rational lo, Rational hi) {
    if (defining.degree() < 1) throw InvalidIsolation("defining polynomial must have degree >= 1");
    if (hi < lo) throw InvalidIsolation("empty interval");
    auto data = std::make_shared<Data>();
    data->squarefree = squarefree_part(defining.to_rational());
    data->sturm = sturm_sequence(data->squarefree);
    data->defining = std::move(defining);
    const int count = count_real_roots(data->sturm, lo, hi);
    if (count != 1)
        throw InvalidIsolation("expected one root in [" + rational_to_string(lo) + ", " +
                               rational_to_string(hi) + "], found " + std::to_string(count));
    if (data->squarefree.degree() == 1) {
        lo = hi = -data->squarefree.coeffs()[0] / data->squarefree.coeffs()[1];
    } else if (data->squarefree.sign_at(lo) == 0) {
        hi = lo;
    } else if (data->squarefree.sign_at(hi) == 0) {
        lo = hi;
    }
    data_ = std::move(data);
    lo_ = std::move(lo);
    hi_ = std::move(hi);
}

AlgebraicReal AlgebraicReal::from_rational(const Rational& q) {
    IntPolynomial p(std::vector<Integer>{-q.get_num(), q.get_den()});
    return AlgebraicReal(std::move(p), q, q);
}

std::optional<Rational> AlgebraicReal::exact() const {
    if (lo_ == hi_) return lo_;
    return std::nullopt;
}

AlgebraicReal AlgebraicReal::refine(const Rational& target_width) const {
    if (target_width <= 0) throw std::invalid_argument("refine: target width must be positive");
    Rational lo = lo_, hi = hi_;
    if (hi - lo <= target_width) return *this;
    const auto& p = data_->squarefree;
    const int s_lo = p.sign_at(lo);
    while (hi - lo > target_width) {
        Rational mid = (lo + hi) / 2;
        const int s_mid = p.sign_at(mid);
        if (s_mid == 0) {
            lo = hi = mid;
            break;
        }
        if (s_mid == s_lo) lo = std::move(mid);
        else hi = std::move(mid);
    }
    return AlgebraicReal(data_, std::move(lo), std::move(hi));
}

Order AlgebraicReal::compare(const Rational& q) const {
    if (q < lo_) return Order::Greater;
    if (q > hi_) return Order::Less;
    if (lo_ == hi_) return Order::Equal;
    const auto& p = data_->squarefree;
    const int s_q = p.sign_at(q);
    if (s_q == 0) return Order::Equal;
    // One simple root inside: the sign flips exactly once across it.
    return s_q == p.sign_at(hi_) ? Order::Less : Order::Greater;
}

double AlgebraicReal::to_double() const {
    if (lo_ == hi_) return lo_.get_d();
    const AlgebraicReal r = refine(Rational(1, Integer(1) << 80));
    const Rational mid = (r.lo_ + r.hi_) / 2;
    return mid.get_d();
}

namespace {

void isolate(const std::shared_ptr<const std::vector<RationalPolynomial>>& sturm,
             const IntPolynomial& p, const Rational& lo, const Rational& hi, int count,
             std::vector<AlgebraicReal>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.emplace_back(p, lo, hi);
        return;
    }
    const Rational mid = (lo + hi) / 2;
    // Split into [lo, mid] and (mid, hi]; a root at mid is kept on the left.
    const int left = count_real_roots(*sturm, lo, mid);
    isolate(sturm, p, lo, mid, left, out);
    if (count - left > 0) {
        // Shrink the right half slightly so that it excludes mid exactly.
        Rational a = mid, b = hi;
        if (sturm->front().sign_at(mid) == 0) {
            Rational step = (hi - mid) / 2;
            while (count_real_roots(*sturm, mid + step, hi) != count - left) step /= 2;
            a = mid + step;
            while (count_real_roots(*sturm, a, hi) != count - left) step /= 2, a = mid + step;
        }
        isolate(sturm, p, a, b, count - left, out);
    }
}

} // namespace

std::vector<AlgebraicReal> real_roots_in(const IntPolynomial& p, const Rational& lo,
                                         const Rational& hi, bool open) {
    std::vector<AlgebraicReal> out;
    if (hi < lo) return out;
    auto sturm = std::make_shared<const std::vector<RationalPolynomial>>(
        sturm_sequence(squarefree_part(p.to_rational())));
    const int count = count_real_roots(*sturm, lo, hi);
    isolate(sturm, p, lo, hi, count, out);
    if (open) {
        std::vector<AlgebraicReal> inner;
        for (auto& r : out) {
            auto e = r.exact();
            if (e && (*e == lo || *e == hi)) continue;
            inner.push_back(std::move(r));
        }
        return inner;
    }
    return out;
}

Integer ceil_minus_one(const AlgebraicReal& x) {
    Integer m(static_cast<long>(std::floor(x.to_double())));
    // Adjust until m < x <= m + 1 holds exactly.
    while (x.compare(Rational(m)) != Order::Greater) --m;
    while (x.compare(Rational(m + 1)) == Order::Greater) ++m;
    return m;
}

} // namespace betalab
