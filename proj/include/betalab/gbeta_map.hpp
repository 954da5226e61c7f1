#pragma once

#include "betalab/zbeta.hpp"

#include <optional>
#include <vector>

namespace betalab {

/// Entry k is +1 for an increasing branch on I_k and -1 for a decreasing one.
using SignConfiguration = std::vector<int>;

/// f_{β,E} on [0,1]; m < β <= m + 1 and |E| = m + 1.
class GBetaMap {
public:
    GBetaMap(Ring ring, SignConfiguration signs);

    const Ring& ring() const { return ring_; }
    const AlgebraicReal& beta() const { return ring_->beta(); }
    int m() const { return m_; }
    const SignConfiguration& signs() const { return signs_; }
    int sign(int k) const { return signs_[static_cast<std::size_t>(k)]; }

    ZBetaElement element(const Rational& q) const { return ZBetaElement::constant(ring_, q); }
    ZBetaElement one() const { return element(1); }

private:
    Ring ring_;
    SignConfiguration signs_;
    int m_;
};

struct ExpansionStep {
    int s = 1; ///< cumulative sign s(x, j)
    int d = 0; ///< digit d(x, j)
    friend bool operator==(const ExpansionStep& a, const ExpansionStep& b) {
        return a.s == b.s && a.d == b.d;
    }
};

enum class ShapeKind { Finite, Periodic, Preperiodic, Truncated };
const char* to_string(ShapeKind k);

struct Shape {
    ShapeKind kind = ShapeKind::Truncated;
    std::size_t preperiod = 0; ///< k for Preperiodic, 0 otherwise
    std::size_t period = 0;    ///< p for Periodic / Preperiodic
};

/// Digits and signs of a (β,E)-expansion. For eventually periodic shapes the
/// steps hold the preperiod followed by exactly one period.
struct Expansion {
    std::vector<ExpansionStep> steps;
    Shape shape;
    int next_sign = 1; ///< s(n+1) after the last recorded step (Finite / Truncated)
    bool of_one = false;

    bool is_infinite() const { return shape.kind == ShapeKind::Periodic || shape.kind == ShapeKind::Preperiodic; }
    /// Step j (1-based). Periodic shapes repeat; Finite shapes continue with
    /// digit 0. Truncated shapes throw OutOfRange past the horizon.
    ExpansionStep at(std::size_t j) const;
    std::vector<ExpansionStep> take(std::size_t n) const;
};

struct Itinerary {
    std::vector<int> symbols;
    Shape shape;
    int at(std::size_t j) const; ///< 1-based, periodic extension
    /// Number of symbols available (infinite shapes report SIZE_MAX).
    std::size_t available() const;
};

struct StepResult {
    ZBetaElement next;
    int e = 1;
    int d = 0;
};

/// Branch index k with x in I_k (right-closed intervals). Throws OutOfRange.
int classify(const GBetaMap& map, const ZBetaElement& x);
StepResult step(const GBetaMap& map, const ZBetaElement& x);

/// Expansion of x, stopping at an exact zero (Finite), at the first repeated
/// (point, sign) state (Periodic / Preperiodic) or after max_steps (Truncated).
Expansion expand(const GBetaMap& map, const ZBetaElement& x, std::size_t max_steps);

/// Finite to infinite conversion. For an expansion of a point other than 1 the
/// infinite expansion of 1 must be supplied. Throws NotFinite.
Expansion finite_to_infinite(const Expansion& exp, const Expansion* one_infinite = nullptr);

/// Minimal period first, then minimal preperiod.
Expansion canonical_expansion(std::vector<ExpansionStep> steps, std::size_t preperiod,
                              std::size_t period);
Itinerary canonical_itinerary(std::vector<int> symbols, std::size_t preperiod, std::size_t period);

/// It(j) = d(j) when s(j+1) = s(j), else d(j) - 1. Throws NotInfinite on Finite input.
Itinerary to_itinerary(const Expansion& exp);

/// Sign-twisted lexicographic order on finite words. A proper prefix is Less.
Order order_E(const std::vector<int>& w, const std::vector<int>& v, const SignConfiguration& E);

/// Every shift of w is <=_E it1 on the comparison horizon.
bool is_admissible(const Itinerary& w, const Itinerary& it1, const SignConfiguration& E);

struct PcfResult {
    Expansion expansion;             ///< canonical infinite expansion of 1
    Expansion raw;                   ///< expansion generated by the orbit itself
    std::vector<ZBetaElement> orbit; ///< distinct orbit points f^0(1), f^1(1), ...
    std::size_t orbit_preperiod = 0;
    std::size_t orbit_period = 0;
    Itinerary itinerary;             ///< branch indices along the orbit of 1

    std::size_t k() const { return expansion.shape.preperiod; }
    std::size_t p() const { return expansion.shape.period; }
    /// f^j(1) for any j >= 0.
    const ZBetaElement& point(std::size_t j) const;
};

/// Exact orbit of 1 with repeat detection; nullopt when undetermined.
std::optional<PcfResult> detect_pcf(const GBetaMap& map, std::size_t max_steps = 10000);

/// Branch indices of the orbit of x, eventually periodic when the orbit repeats.
Itinerary orbit_itinerary(const GBetaMap& map, const ZBetaElement& x, std::size_t max_steps);

} // namespace betalab
