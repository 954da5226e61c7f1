#pragma once

#include "betalab/gbeta_map.hpp"

#include <optional>
#include <vector>

namespace betalab {

/// Continuous piecewise affine map on [breakpoints.front(), breakpoints.back()],
/// all coordinates exact in one field Q(θ). Rational maps use the ring of a
/// rational generator.
class PiecewiseLinearMap {
public:
    /// Throws InvalidMap unless breakpoints increase strictly (at least two),
    /// values match in count and every value lies in the domain.
    PiecewiseLinearMap(std::vector<ZBetaElement> breakpoints, std::vector<ZBetaElement> values);

    static PiecewiseLinearMap from_rationals(const std::vector<Rational>& breakpoints,
                                             const std::vector<Rational>& values);
    /// The continuous map f_{β,E}; InvalidMap when it has a jump.
    static PiecewiseLinearMap from_gbeta(const GBetaMap& map);

    const Ring& ring() const { return breakpoints_.front().ring(); }
    const std::vector<ZBetaElement>& breakpoints() const { return breakpoints_; }
    const std::vector<ZBetaElement>& values() const { return values_; }
    const std::vector<ZBetaElement>& slopes() const { return slopes_; }
    const ZBetaElement& lo() const { return breakpoints_.front(); }
    const ZBetaElement& hi() const { return breakpoints_.back(); }

    /// Throws OutOfRange outside the domain.
    ZBetaElement operator()(const ZBetaElement& x) const;

    /// Maximal intervals of monotonicity as breakpoint index ranges [first, last].
    struct Lap {
        std::size_t first, last;
        int direction; ///< +1, -1 or 0 for a constant stretch
    };
    std::vector<Lap> laps() const;

    /// Same map restricted to [a, b] (a subinterval mapped into itself).
    PiecewiseLinearMap restrict_to(const ZBetaElement& a, const ZBetaElement& b) const;

    /// Exact equality of breakpoints and values.
    friend bool operator==(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g);

private:
    std::vector<ZBetaElement> breakpoints_, values_, slopes_;
};

/// x ↦ 1 - f(1 - x) on [0, 1].
PiecewiseLinearMap reflect(const PiecewiseLinearMap& f);

/// x ↦ (flipped ? 1 - u : u) with u = (x - offset) / scale. Sends Λ onto [0, 1].
struct Conjugacy {
    ZBetaElement offset;
    ZBetaElement scale;
    bool flipped = false;

    ZBetaElement apply(const ZBetaElement& x) const;
    ZBetaElement invert(const ZBetaElement& y) const;
};

/// φ ∘ f ∘ φ⁻¹ where φ = c.apply; f must live on the preimage of [0, 1].
PiecewiseLinearMap conjugate(const PiecewiseLinearMap& f, const Conjugacy& c);
/// φ⁻¹ ∘ f ∘ φ for f on [0, 1].
PiecewiseLinearMap conjugate_back(const PiecewiseLinearMap& f, const Conjugacy& c);

struct NormalForm {
    GBetaMap map;                    ///< β = λ, E = (1,-1) or (-1,1)
    PiecewiseLinearMap normalized;   ///< the conjugated map on [0, 1]
    PiecewiseLinearMap trimmed;      ///< input restricted to Λ
    Conjugacy conjugacy;             ///< Λ onto [0, 1]
    int input_case = 0;              ///< 1..4 after trimming and rescaling
    int output_case = 0;             ///< 1 or 2
    std::size_t trim_iterations = 0; ///< images taken before Λ stabilized
};

/// Trims to Λ = ∩ g^i([0,1]), rescales, classifies the four cases and reflects
/// cases 3 and 4. Throws NotUniform, NotExpanding, NotUnimodal, OutOfRange
/// (λ > 2) and NotPostCriticallyFinite.
NormalForm normalize(const PiecewiseLinearMap& g, std::size_t max_steps = 10000);

/// λ as an algebraic real, from the characteristic polynomial of
/// multiplication by the slope.
AlgebraicReal slope_value(const ZBetaElement& lambda);

struct LapOptions {
    Integer max_laps = Integer("1000000000000000000"); ///< cap on L(n)
    std::size_t max_intervals = 200000;              ///< cap on distinct lap images
};

struct LapReport {
    std::vector<Integer> laps;     ///< L(1) .. L(n_max)
    std::vector<double> estimates; ///< log L(n) / n
    double estimate = 0;           ///< at n_max
    double ratio_estimate = 0;     ///< log(L(n_max) / L(n_max - 1)), diagnostic only
    std::size_t distinct_images = 0;
};

/// Exact lap numbers of f^n, n = 1..n_max. Throws ExplodedBreakpointCount past
/// a cap and OutOfRange for n_max < 2.
LapReport lap_entropy(const PiecewiseLinearMap& f, std::size_t n_max, const LapOptions& opt = {});

struct EntropyCheck {
    LapReport laps;
    double log_beta = 0;
    double gap = 0; ///< |estimate - log β|
};

EntropyCheck entropy_cross_check(const NormalForm& nf, std::size_t n_max, const LapOptions& opt = {});

/// Turning-point orbit; nullopt when no repeat within max_steps.
std::optional<std::vector<ZBetaElement>> turning_orbit(const PiecewiseLinearMap& f, std::size_t max_steps = 10000);

} // namespace betalab
