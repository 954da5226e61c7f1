#include "betalab/gbeta_map.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>

namespace betalab {

const char* to_string(ShapeKind k) {
    switch (k) {
    case ShapeKind::Finite: return "Finite";
    case ShapeKind::Periodic: return "Periodic";
    case ShapeKind::Preperiodic: return "Preperiodic";
    case ShapeKind::Truncated: return "Truncated";
    }
    return "?";
}

GBetaMap::GBetaMap(Ring ring, SignConfiguration signs) : ring_(std::move(ring)), signs_(std::move(signs)) {
    if (ring_->beta().compare(Rational(1)) != Order::Greater) throw InvalidMap("beta must exceed 1");
    const Integer m = ceil_minus_one(ring_->beta());
    if (!m.fits_sint_p() || m > 100000) throw InvalidMap("beta too large");
    m_ = static_cast<int>(m.get_si());
    if (signs_.size() != static_cast<std::size_t>(m_ + 1))
        throw InvalidMap("sign configuration has length " + std::to_string(signs_.size()) +
                         ", expected m + 1 = " + std::to_string(m_ + 1));
    for (int e : signs_)
        if (e != 1 && e != -1) throw InvalidMap("sign entries must be +1 or -1");
}

// ------------------------------------------------------------ Expansion

ExpansionStep Expansion::at(std::size_t j) const {
    if (j == 0) throw OutOfRange("expansion steps are 1-based");
    const std::size_t n = steps.size();
    switch (shape.kind) {
    case ShapeKind::Finite:
        if (j <= n) return steps[j - 1];
        return {next_sign, 0};
    case ShapeKind::Truncated:
        if (j <= n) return steps[j - 1];
        if (j == n + 1) return {next_sign, -1};
        throw OutOfRange("step " + std::to_string(j) + " beyond truncation " + std::to_string(n));
    default: {
        const std::size_t k = shape.preperiod, p = shape.period;
        if (j <= k) return steps[j - 1];
        return steps[k + (j - k - 1) % p];
    }
    }
}

std::vector<ExpansionStep> Expansion::take(std::size_t n) const {
    std::vector<ExpansionStep> out;
    out.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) out.push_back(at(j));
    return out;
}

int Itinerary::at(std::size_t j) const {
    if (j == 0) throw OutOfRange("itinerary symbols are 1-based");
    if (shape.kind == ShapeKind::Truncated || shape.kind == ShapeKind::Finite) {
        if (j <= symbols.size()) return symbols[j - 1];
        throw OutOfRange("symbol " + std::to_string(j) + " beyond horizon");
    }
    const std::size_t k = shape.preperiod, p = shape.period;
    if (j <= k) return symbols[j - 1];
    return symbols[k + (j - k - 1) % p];
}

std::size_t Itinerary::available() const {
    if (shape.kind == ShapeKind::Periodic || shape.kind == ShapeKind::Preperiodic) return SIZE_MAX;
    return symbols.size();
}

namespace {

template <class T>
void canonicalize(std::vector<T>& seq, std::size_t& k, std::size_t& p) {
    // Primitive root of the period block.
    for (std::size_t q = 1; q <= p; ++q) {
        if (p % q) continue;
        bool ok = true;
        for (std::size_t i = q; i < p && ok; ++i) ok = seq[k + i] == seq[k + i - q];
        if (ok) {
            p = q;
            break;
        }
    }
    seq.resize(k + p);
    // Absorb the preperiod into the period while it matches.
    // x (y..x)^inf = (x y..)^inf: the period slides one step left
    while (k > 0 && seq[k - 1] == seq[k + p - 1]) {
        --k;
        seq.resize(k + p);
    }
}

Shape eventual_shape(std::size_t k, std::size_t p) {
    return {k == 0 ? ShapeKind::Periodic : ShapeKind::Preperiodic, k, p};
}

// Value-level lookup of orbit points: bucket by a double key, confirm exactly.
class PointIndex {
public:
    std::optional<std::size_t> find(const ZBetaElement& x, double key, int tag,
                                    const std::vector<ZBetaElement>& points) const {
        const double tol = 1e-9 * std::max(1.0, std::abs(key));
        for (auto it = index_.lower_bound(key - tol); it != index_.end() && it->first <= key + tol; ++it) {
            if (it->second.second != tag) continue;
            const ZBetaElement& y = points[it->second.first];
            if (y == x || y.compare(x) == Order::Equal) return it->second.first;
        }
        return std::nullopt;
    }
    void insert(double key, std::size_t i, int tag) { index_.emplace(key, std::make_pair(i, tag)); }

private:
    std::multimap<double, std::pair<std::size_t, int>> index_;
};

} // namespace

Expansion canonical_expansion(std::vector<ExpansionStep> steps, std::size_t preperiod, std::size_t period) {
    if (period == 0 || steps.size() < preperiod + period)
        throw std::invalid_argument("canonical_expansion: inconsistent shape");
    canonicalize(steps, preperiod, period);
    Expansion e;
    e.steps = std::move(steps);
    e.shape = eventual_shape(preperiod, period);
    e.next_sign = e.at(e.steps.size() + 1).s;
    return e;
}

Itinerary canonical_itinerary(std::vector<int> symbols, std::size_t preperiod, std::size_t period) {
    if (period == 0 || symbols.size() < preperiod + period)
        throw std::invalid_argument("canonical_itinerary: inconsistent shape");
    canonicalize(symbols, preperiod, period);
    Itinerary it;
    it.symbols = std::move(symbols);
    it.shape = eventual_shape(preperiod, period);
    return it;
}

// ------------------------------------------------------------ map dynamics

int classify(const GBetaMap& map, const ZBetaElement& x) {
    if (x.sign() < 0) throw OutOfRange("x < 0");
    if (x.compare(Rational(1)) == Order::Greater) throw OutOfRange("x > 1");
    const ZBetaElement y = ZBetaElement::generator(map.ring()) * x;
    if (y.sign() == 0) return 0;
    const int m = map.m();
    int k = static_cast<int>(std::ceil(y.to_double())) - 1;
    k = std::clamp(k, 0, m);
    // k < βx <= k + 1, decided exactly.
    while (k > 0 && y.compare(Rational(k)) != Order::Greater) --k;
    while (k < m && y.compare(Rational(k + 1)) == Order::Greater) ++k;
    return k;
}

StepResult step(const GBetaMap& map, const ZBetaElement& x) {
    const int k = classify(map, x);
    const ZBetaElement y = ZBetaElement::generator(map.ring()) * x;
    StepResult r;
    r.e = map.sign(k);
    if (r.e == 1) {
        r.next = y - Rational(k);
        r.d = k;
    } else {
        r.next = (-y) + Rational(k + 1);
        r.d = k + 1;
    }
    return r;
}

Expansion expand(const GBetaMap& map, const ZBetaElement& x, std::size_t max_steps) {
    Expansion e;
    e.of_one = x == map.one();
    std::vector<ZBetaElement> points;
    PointIndex index;
    ZBetaElement cur = x;
    int s = 1;
    for (std::size_t j = 0;; ++j) {
        if (map.sign(0) == 1 && cur.sign() == 0) {
            e.shape = {ShapeKind::Finite, 0, 0};
            e.next_sign = s;
            return e;
        }
        const double key = cur.to_double();
        if (auto i = index.find(cur, key, s, points)) {
            Expansion c = canonical_expansion(std::move(e.steps), *i, j - *i);
            c.of_one = e.of_one;
            return c;
        }
        if (j == max_steps) {
            e.shape = {ShapeKind::Truncated, 0, 0};
            e.next_sign = s;
            return e;
        }
        index.insert(key, points.size(), s);
        points.push_back(cur);
        StepResult r = step(map, cur);
        e.steps.push_back({s, r.d});
        s *= r.e;
        cur = std::move(r.next);
    }
}

Expansion finite_to_infinite(const Expansion& exp, const Expansion* one_infinite) {
    if (exp.shape.kind != ShapeKind::Finite) throw NotFinite(std::string("shape is ") + to_string(exp.shape.kind));
    if (exp.steps.empty()) throw NotFinite("expansion of 0 has no last digit to adjust");
    std::vector<ExpansionStep> steps = exp.steps;
    ExpansionStep& last = steps.back();
    last.d += last.s == 1 ? -1 : 1;
    if (exp.of_one) {
        const std::size_t n = steps.size();
        Expansion c = canonical_expansion(std::move(steps), 0, n);
        c.of_one = true;
        return c;
    }
    if (!one_infinite || !one_infinite->is_infinite())
        throw NotInfinite("the infinite expansion of 1 is required for x != 1");
    const std::size_t k = steps.size();
    steps.insert(steps.end(), one_infinite->steps.begin(), one_infinite->steps.end());
    return canonical_expansion(std::move(steps), k + one_infinite->shape.preperiod,
                               one_infinite->shape.period);
}

Itinerary to_itinerary(const Expansion& exp) {
    if (exp.shape.kind == ShapeKind::Finite) throw NotInfinite("finite expansion; convert it first");
    std::vector<int> symbols;
    symbols.reserve(exp.steps.size());
    for (std::size_t j = 1; j <= exp.steps.size(); ++j) {
        const ExpansionStep a = exp.at(j), b = exp.at(j + 1);
        symbols.push_back(a.s == b.s ? a.d : a.d - 1);
    }
    if (exp.is_infinite()) return canonical_itinerary(std::move(symbols), exp.shape.preperiod, exp.shape.period);
    Itinerary it;
    it.symbols = std::move(symbols);
    it.shape = exp.shape;
    return it;
}

namespace {

void check_symbols(const std::vector<int>& w, const SignConfiguration& E) {
    for (int a : w)
        if (a < 0 || static_cast<std::size_t>(a) >= E.size())
            throw InvalidSymbol("symbol " + std::to_string(a) + " outside 0.." + std::to_string(E.size() - 1));
}

} // namespace

Order order_E(const std::vector<int>& w, const std::vector<int>& v, const SignConfiguration& E) {
    check_symbols(w, E);
    check_symbols(v, E);
    int sign = 1;
    const std::size_t n = std::min(w.size(), v.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] != v[i]) return (w[i] > v[i]) == (sign > 0) ? Order::Greater : Order::Less;
        sign *= E[static_cast<std::size_t>(w[i])];
    }
    if (w.size() == v.size()) return Order::Equal;
    return w.size() < v.size() ? Order::Less : Order::Greater;
}

bool is_admissible(const Itinerary& w, const Itinerary& it1, const SignConfiguration& E) {
    check_symbols(w.symbols, E);
    check_symbols(it1.symbols, E);
    const bool w_inf = w.available() == SIZE_MAX, v_inf = it1.available() == SIZE_MAX;
    const std::size_t shifts = w_inf ? w.shape.preperiod + w.shape.period : w.symbols.size();
    std::size_t full_horizon = SIZE_MAX;
    if (w_inf && v_inf)
        full_horizon = std::max(w.shape.preperiod, it1.shape.preperiod) +
                       std::lcm(w.shape.period, it1.shape.period);
    for (std::size_t j = 0; j < shifts; ++j) {
        std::size_t horizon = full_horizon;
        if (!w_inf) horizon = std::min(horizon, w.symbols.size() - j);
        if (!v_inf) horizon = std::min(horizon, it1.symbols.size());
        int sign = 1;
        for (std::size_t i = 0; i < horizon; ++i) {
            const int a = w.at(j + 1 + i), b = it1.at(1 + i);
            if (a != b) {
                if ((a > b) == (sign > 0)) return false;
                break;
            }
            sign *= E[static_cast<std::size_t>(a)];
        }
    }
    return true;
}

const ZBetaElement& PcfResult::point(std::size_t j) const {
    if (j < orbit.size()) return orbit[j];
    return orbit[orbit_preperiod + (j - orbit_preperiod) % orbit_period];
}

std::optional<PcfResult> detect_pcf(const GBetaMap& map, std::size_t max_steps) {
    PcfResult res;
    std::vector<ZBetaElement> states;
    std::vector<int> symbols;
    PointIndex state_index, point_index;
    bool orbit_closed = false;
    ZBetaElement cur = map.one();
    std::vector<ExpansionStep> steps;
    int s = 1;
    for (std::size_t j = 0;; ++j) {
        if (map.sign(0) == 1 && cur.sign() == 0) {
            if (!orbit_closed) {
                res.orbit.push_back(cur);
                symbols.push_back(0);
                res.orbit_preperiod = res.orbit.size() - 1;
                res.orbit_period = 1;
            }
            res.raw.steps = std::move(steps);
            res.raw.shape = {ShapeKind::Finite, 0, 0};
            res.raw.next_sign = s;
            res.raw.of_one = true;
            res.expansion = finite_to_infinite(res.raw);
            res.itinerary = canonical_itinerary(std::move(symbols), res.orbit_preperiod, res.orbit_period);
            return res;
        }
        const double key = cur.to_double();
        bool fresh_point = false;
        if (!orbit_closed) {
            if (auto i = point_index.find(cur, key, 0, res.orbit)) {
                orbit_closed = true;
                res.orbit_preperiod = *i;
                res.orbit_period = res.orbit.size() - *i;
            } else {
                fresh_point = true;
            }
        }
        if (auto i = state_index.find(cur, key, s, states)) {
            res.raw = canonical_expansion(steps, *i, j - *i);
            res.raw.of_one = true;
            res.expansion = res.raw;
            res.itinerary = canonical_itinerary(std::move(symbols), res.orbit_preperiod, res.orbit_period);
            return res;
        }
        if (j == max_steps) return std::nullopt;
        if (fresh_point) {
            point_index.insert(key, res.orbit.size(), 0);
            res.orbit.push_back(cur);
        }
        state_index.insert(key, states.size(), s);
        states.push_back(cur);
        StepResult r = step(map, cur);
        if (!orbit_closed) symbols.push_back(r.e == 1 ? r.d : r.d - 1);
        steps.push_back({s, r.d});
        s *= r.e;
        cur = std::move(r.next);
    }
}

Itinerary orbit_itinerary(const GBetaMap& map, const ZBetaElement& x, std::size_t max_steps) {
    std::vector<ZBetaElement> points;
    std::vector<int> symbols;
    PointIndex index;
    ZBetaElement cur = x;
    for (std::size_t j = 0;; ++j) {
        const double key = cur.to_double();
        if (auto i = index.find(cur, key, 0, points)) return canonical_itinerary(std::move(symbols), *i, j - *i);
        if (j == max_steps) {
            Itinerary it;
            it.symbols = std::move(symbols);
            it.shape = {ShapeKind::Truncated, 0, 0};
            return it;
        }
        index.insert(key, points.size(), 0);
        points.push_back(cur);
        StepResult r = step(map, cur);
        symbols.push_back(r.e == 1 ? r.d : r.d - 1);
        cur = std::move(r.next);
    }
}

} // namespace betalab
