#include "betalab/json_io.hpp"

#include "betalab/errors.hpp"

namespace betalab {

namespace {

ShapeKind shape_from_string(const std::string& s) {
    for (ShapeKind k : {ShapeKind::Finite, ShapeKind::Periodic, ShapeKind::Preperiodic, ShapeKind::Truncated})
        if (s == to_string(k)) return k;
    throw ParseError("unknown shape '" + s + "'");
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad value for '") + key + "': " + e.what());
    }
}

} // namespace

json to_json(const Rational& q) { return rational_to_string(q); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    throw ParseError("expected a rational as a string or integer, got " + j.dump());
}

json to_json(const IntPolynomial& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

IntPolynomial polynomial_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
    std::vector<Integer> c;
    for (const auto& e : j) {
        const Rational q = rational_from_json(e);
        if (q.get_den() != 1) throw ParseError("polynomial coefficients must be integers");
        c.push_back(q.get_num());
    }
    return IntPolynomial(std::move(c));
}

json to_json(const AlgebraicReal& x) {
    return json{{"poly", to_json(x.defining())}, {"lo", to_json(x.lo())}, {"hi", to_json(x.hi())}};
}

AlgebraicReal algebraic_from_json(const json& j) {
    if (!j.is_object()) return AlgebraicReal::from_rational(rational_from_json(j));
    return AlgebraicReal(polynomial_from_json(field<json>(j, "poly")), rational_from_json(field<json>(j, "lo")),
                         rational_from_json(field<json>(j, "hi")));
}

json to_json(const ZBetaElement& x) {
    json a = json::array();
    for (const auto& c : x.coords()) a.push_back(to_json(c));
    return a;
}

json to_json(const Expansion& e) {
    json steps = json::array();
    for (const auto& s : e.steps) steps.push_back({{"s", s.s}, {"d", s.d}});
    return json{{"shape", to_string(e.shape.kind)},
                {"preperiod", e.shape.preperiod},
                {"period", e.shape.period},
                {"steps", steps},
                {"next_sign", e.next_sign}};
}

Expansion expansion_from_json(const json& j) {
    Expansion e;
    e.shape.kind = shape_from_string(field<std::string>(j, "shape"));
    e.shape.preperiod = j.value("preperiod", std::size_t{0});
    e.shape.period = j.value("period", std::size_t{0});
    e.next_sign = j.value("next_sign", 1);
    for (const auto& s : field<json>(j, "steps")) {
        const int sg = field<int>(s, "s");
        if (sg != 1 && sg != -1) throw ParseError("step sign must be +1 or -1");
        e.steps.push_back({sg, field<int>(s, "d")});
    }
    if (e.is_infinite() && e.shape.preperiod + e.shape.period != e.steps.size())
        throw ParseError("steps must hold the preperiod and one period");
    e.of_one = true;
    return e;
}

json to_json(const Itinerary& it) {
    return json{{"shape", to_string(it.shape.kind)},
                {"preperiod", it.shape.preperiod},
                {"period", it.shape.period},
                {"symbols", it.symbols}};
}

json to_json(const ParryPolynomial& p) {
    return json{{"coeffs", to_json(p.poly)}, {"k", p.k}, {"p", p.p}, {"expansion", to_json(p.expansion)}};
}

ParryPolynomial parry_from_json(const json& j) {
    ParryPolynomial p;
    p.poly = polynomial_from_json(field<json>(j, "coeffs"));
    p.k = field<std::size_t>(j, "k");
    p.p = field<std::size_t>(j, "p");
    if (j.contains("expansion")) p.expansion = expansion_from_json(j.at("expansion"));
    return p;
}

json to_json(const CriterionSequence& c) {
    json constrained = json::array();
    for (char x : c.constrained) constrained.push_back(x != 0);
    return json{{"M", c.M},
                {"a", c.a},
                {"s", c.s},
                {"itinerary", c.itinerary},
                {"E", c.E},
                {"E_constrained", constrained},
                {"polynomial", to_json(c.polynomial())}};
}

json to_json(const LambdaSolution& s) {
    return json{{"phi", s.phi},
                {"lambda", s.lambda},
                {"alpha", s.alpha},
                {"residual", s.residual},
                {"pure_residual", s.pure_residual},
                {"n_trunc", s.n_trunc},
                {"anomalous_index", s.anomalous_index},
                {"anomalous_value", s.anomalous_value},
                {"anomalous_refinement", "heuristic"},
                {"ties", s.ties},
                {"certified", s.certified}};
}

json to_json(const LapReport& r) {
    json laps = json::array();
    for (const auto& L : r.laps) laps.push_back(L.get_str());
    return json{{"laps", laps},
                {"estimates", r.estimates},
                {"estimate", r.estimate},
                {"ratio_estimate", r.ratio_estimate},
                {"distinct_images", r.distinct_images}};
}

ScanConfig scan_config_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("scan config must be an object");
    ScanConfig c;
    try {
        if (j.contains("n_range")) {
            const auto& r = j.at("n_range");
            if (!r.is_array() || r.size() != 2) throw ParseError("n_range must be [lo, hi]");
            c.n_lo = r[0].get<int>();
            c.n_hi = r[1].get<int>();
        }
        c.coefficient_bound = j.value("coefficient_bound", c.coefficient_bound);
        c.sample_count = j.value("sample_count", c.sample_count);
        c.seed = j.value("seed", c.seed);
        c.classical_count = j.value("classical_count", c.classical_count);
        c.jobs = j.value("jobs", c.jobs);
        const std::string mode = j.value("mode", std::string("random"));
        if (mode == "random") c.mode = ScanMode::Random;
        else if (mode == "exhaustive") c.mode = ScanMode::Exhaustive;
        else throw ParseError("mode must be 'random' or 'exhaustive'");
        if (j.contains("sources"))
            for (const auto& s : j.at("sources")) c.sources.push_back(s.get<std::vector<long>>());
        if (j.contains("classical_sources"))
            for (const auto& s : j.at("classical_sources"))
                c.classical_sources.push_back({s.value("prefix", std::vector<int>{}), field<std::vector<int>>(s, "period")});
    } catch (const json::exception& e) {
        throw ParseError(std::string("scan config: ") + e.what());
    }
    if (c.n_lo > c.n_hi) throw ParseError("n_range lo exceeds hi");
    return c;
}

PiecewiseLinearMap map_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("map must be an object");
    Ring ring;
    if (j.contains("field")) ring = make_ring(algebraic_from_json(j.at("field")));
    auto read = [&](const char* key) {
        std::vector<json> items = field<std::vector<json>>(j, key);
        std::vector<ZBetaElement> out;
        for (const auto& e : items) {
            if (e.is_array()) {
                std::vector<Rational> coords;
                for (const auto& c : e) coords.push_back(rational_from_json(c));
                out.push_back(ZBetaElement(ring, coords));
            } else {
                out.push_back(ZBetaElement::constant(ring, rational_from_json(e)));
            }
        }
        return out;
    };
    if (!ring) {
        std::vector<Rational> b, v;
        for (const auto& e : field<std::vector<json>>(j, "breakpoints")) b.push_back(rational_from_json(e));
        for (const auto& e : field<std::vector<json>>(j, "values")) v.push_back(rational_from_json(e));
        return PiecewiseLinearMap::from_rationals(b, v);
    }
    return PiecewiseLinearMap(read("breakpoints"), read("values"));
}

json to_json(const PiecewiseLinearMap& f) {
    json b = json::array(), v = json::array();
    for (const auto& x : f.breakpoints()) b.push_back(to_json(x));
    for (const auto& x : f.values()) v.push_back(to_json(x));
    return json{{"breakpoints", b}, {"values", v}, {"field", to_json(f.ring()->beta())}};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace betalab
