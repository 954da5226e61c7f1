#pragma once

#include "betalab/boundary.hpp"
#include "betalab/parry.hpp"
#include "betalab/spectra.hpp"
#include "betalab/unimodal.hpp"

#include <json.hpp>

namespace betalab {

using json = nlohmann::ordered_json;

/// Rationals travel as strings ("3/2"); integers and decimal strings are accepted on input.
json to_json(const Rational& q);
Rational rational_from_json(const json& j);

/// Ascending coefficients as decimal strings.
json to_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const json& j);

/// {poly, lo, hi}
json to_json(const AlgebraicReal& x);
AlgebraicReal algebraic_from_json(const json& j);

/// Coordinates in the ring's power basis.
json to_json(const ZBetaElement& x);

/// {shape, preperiod, period, steps:[{s,d}], next_sign}
json to_json(const Expansion& e);
Expansion expansion_from_json(const json& j);

/// {shape, preperiod, period, symbols}
json to_json(const Itinerary& it);

/// {coeffs, k, p, expansion}
json to_json(const ParryPolynomial& p);
ParryPolynomial parry_from_json(const json& j);

json to_json(const CriterionSequence& c);
json to_json(const LambdaSolution& s);
json to_json(const LapReport& r);

/// Keys: n_range [lo, hi], coefficient_bound, sample_count, seed, mode
/// ("random" | "exhaustive"), sources [[M...]], classical_sources
/// [{prefix, period}], classical_count, jobs. Missing keys keep defaults.
ScanConfig scan_config_from_json(const json& j);

/// {breakpoints, values, field?}. With field = {poly, lo, hi} each entry is a
/// rational or an array of rational coordinates in the field generator.
PiecewiseLinearMap map_from_json(const json& j);
json to_json(const PiecewiseLinearMap& f);

json parse_json(const std::string& text);

} // namespace betalab
