#include "betalab/polynomial.hpp"

#include "betalab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace betalab {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ParseError("empty rational");
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        // Decimal notation such as "0.3" is accepted as an exact rational.
        const auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string whole = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            bool negative = !whole.empty() && whole[0] == '-';
            if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
            if (whole.empty()) whole = "0";
            if (!valid_int(whole) || (!frac.empty() && !valid_int(frac)))
                throw ParseError("malformed rational '" + s + "'");
            Integer num(whole + frac, 10);
            Integer den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            Rational q(num, den);
            q.canonicalize();
            return negative ? Rational(-q) : q;
        }
        if (!valid_int(s)) throw ParseError("malformed rational '" + s + "'");
        return Rational(Integer(strip_plus(s), 10));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
    Integer d(strip_plus(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(Integer(strip_plus(num), 10), d);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& in) {
    Rational q = in;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

// ---------------------------------------------------------------- IntPolynomial

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Integer(0);
}

Rational IntPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

int IntPolynomial::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

IntPolynomial IntPolynomial::derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return IntPolynomial(std::move(d));
}

RationalPolynomial IntPolynomial::to_rational() const {
    std::vector<Rational> c(coeffs_.begin(), coeffs_.end());
    return RationalPolynomial(std::move(c));
}

std::string IntPolynomial::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1) out << mag.get_str() << "*";
        out << var;
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(c));
}

// ----------------------------------------------------------- RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void RationalPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int RationalPolynomial::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

RationalPolynomial RationalPolynomial::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = coeffs_;
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return RationalPolynomial(std::move(c));
}

IntPolynomial RationalPolynomial::primitive() const {
    if (is_zero()) return {};
    Integer den = 1;
    for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints;
    ints.reserve(coeffs_.size());
    Integer content = 0;
    for (const auto& c : coeffs_) {
        Integer v = c.get_num() * (den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        ints.push_back(std::move(v));
    }
    if (coeffs_.back() < 0) content = -content;
    for (auto& v : ints) v /= content;
    return IntPolynomial(std::move(ints));
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const Rational& k, const RationalPolynomial& a) {
    std::vector<Rational> c = a.coeffs_;
    for (auto& x : c) x *= k;
    return RationalPolynomial(std::move(c));
}

void RationalPolynomial::divmod(const RationalPolynomial& a, const RationalPolynomial& b,
                                RationalPolynomial& quotient, RationalPolynomial& remainder) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> r = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) {
        quotient = {};
        remainder = a;
        return;
    }
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational& lead = b.coeffs_.back();
    for (int i = a.degree(); i >= db; --i) {
        const Rational f = r[static_cast<std::size_t>(i)] / lead;
        q[static_cast<std::size_t>(i - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    quotient = RationalPolynomial(std::move(q));
    remainder = RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
    RationalPolynomial x = a, y = b;
    while (!y.is_zero()) {
        RationalPolynomial q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
    if (p.degree() <= 0) return p.monic();
    RationalPolynomial g = RationalPolynomial::gcd(p, p.derivative());
    RationalPolynomial q, r;
    RationalPolynomial::divmod(p, g, q, r);
    return q.monic();
}

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& squarefree) {
    std::vector<RationalPolynomial> seq{squarefree};
    if (squarefree.degree() <= 0) return seq;
    seq.push_back(squarefree.derivative());
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        RationalPolynomial q, r;
        RationalPolynomial::divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.is_zero()) break;
        // Scaling by a positive constant keeps the sign pattern.
        Rational lead = r.leading();
        if (lead < 0) lead = -lead;
        seq.push_back(Rational(-1) / lead * r);
    }
    return seq;
}

namespace {

int sign_variations(const std::vector<RationalPolynomial>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        const int s = p.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

} // namespace

int count_real_roots(const std::vector<RationalPolynomial>& sturm, const Rational& lo,
                     const Rational& hi) {
    if (hi < lo) return 0;
    const int at_lo = sturm.front().sign_at(lo) == 0 ? 1 : 0;
    if (lo == hi) return at_lo;
    return at_lo + sign_variations(sturm, lo) - sign_variations(sturm, hi);
}

int count_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    return count_real_roots(sturm_sequence(squarefree_part(p.to_rational())), lo, hi);
}

Rational cauchy_bound(const IntPolynomial& p) {
    if (p.degree() < 1) return Rational(1);
    Rational m = 0;
    const Rational lead = abs(p.leading());
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = Rational(abs(p.coeffs()[static_cast<std::size_t>(i)])) / lead;
        if (r > m) m = r;
    }
    return m + 1;
}

} // namespace betalab
