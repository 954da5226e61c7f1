#include "betalab/spectra.hpp"

#include "betalab/errors.hpp"
#include "betalab/format.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace betalab {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw OutOfRange("Rng::below(0)");
    // reject the partial block at the top so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

long Rng::between(long lo, long hi) {
    if (hi < lo) throw OutOfRange("Rng::between: empty range");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

bool valid_criterion(const std::vector<long>& M) {
    try {
        make_criterion(M);
        return true;
    } catch (const HypothesisViolation&) {
        return false;
    }
}

} // namespace

std::string ClassicalSource::id() const { return "C:" + join(prefix) + "|" + join(period); }

std::string criterion_id(const std::vector<long>& M) {
    std::string s = "M:";
    for (std::size_t i = 0; i < M.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(M[i]);
    }
    return s;
}

std::vector<long> random_criterion(Rng& rng, int n_lo, int n_hi, long bound) {
    n_lo = std::max(n_lo, 2);
    if (n_hi < n_lo || bound < 3) throw OutOfRange("random_criterion: need n_hi >= 2 and bound >= 3");
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const int n = static_cast<int>(rng.between(n_lo, n_hi));
        std::vector<long> M(static_cast<std::size_t>(n));
        M[0] = rng.between(3, bound);
        for (int j = 1; j < n; ++j) {
            const long a = rng.between(1, M[0] - 2);
            M[static_cast<std::size_t>(j)] = rng.below(2) ? a : -a;
        }
        if (valid_criterion(M)) return M;
    }
    throw OutOfRange("random_criterion: no valid sequence found");
}

std::vector<std::vector<long>> enumerate_criteria(int n_lo, int n_hi, long bound, std::size_t limit) {
    std::vector<std::vector<long>> out;
    std::vector<long> M;
    // tail entries in [-(M(1)-2), M(1)-2] without 0, increasing order
    std::function<void(std::size_t)> fill = [&](std::size_t n) {
        if (out.size() >= limit) return;
        if (M.size() == n) {
            if (valid_criterion(M)) out.push_back(M);
            return;
        }
        const long r = M[0] - 2;
        for (long v = -r; v <= r && out.size() < limit; ++v) {
            if (v == 0) continue;
            M.push_back(v);
            fill(n);
            M.pop_back();
        }
    };
    for (int n = std::max(n_lo, 2); n <= n_hi; ++n)
        for (long m1 = 3; m1 <= bound; ++m1) {
            M.assign(1, m1);
            fill(static_cast<std::size_t>(n));
        }
    return out;
}

Expansion classical_expansion(const ClassicalSource& src) {
    std::vector<ExpansionStep> steps;
    for (int d : src.prefix) steps.push_back({1, d});
    for (int d : src.period) steps.push_back({1, d});
    return canonical_expansion(steps, src.prefix.size(), src.period.size());
}

bool classical_admissible(const ClassicalSource& src) {
    if (src.period.empty()) return false;
    const std::vector<int>& first = src.prefix.empty() ? src.period : src.prefix;
    const int d1 = first.front();
    if (d1 < 1) return false;
    if (std::all_of(src.period.begin(), src.period.end(), [](int d) { return d == 0; })) return false;
    auto all = src.prefix;
    all.insert(all.end(), src.period.begin(), src.period.end());
    for (int d : all)
        if (d < 0 || d > d1) return false;
    std::vector<int> symbols = all;
    Itinerary w = canonical_itinerary(symbols, src.prefix.size(), src.period.size());
    return is_admissible(w, w, SignConfiguration(static_cast<std::size_t>(d1) + 1, 1));
}

ClassicalSource random_classical(Rng& rng, int max_digit) {
    if (max_digit < 1) throw OutOfRange("random_classical: max_digit >= 1 required");
    for (int attempt = 0; attempt < 100000; ++attempt) {
        ClassicalSource s;
        const int d1 = static_cast<int>(rng.between(1, max_digit));
        const auto k = static_cast<std::size_t>(rng.between(0, 2));
        const auto p = static_cast<std::size_t>(rng.between(1, 4));
        std::vector<int> digits(k + p);
        digits[0] = d1;
        for (std::size_t i = 1; i < digits.size(); ++i) digits[i] = static_cast<int>(rng.between(0, d1));
        s.prefix.assign(digits.begin(), digits.begin() + static_cast<long>(k));
        s.period.assign(digits.begin() + static_cast<long>(k), digits.end());
        if (classical_admissible(s)) return s;
    }
    throw OutOfRange("random_classical: no admissible word found");
}

ClassicalBeta solve_classical(const ClassicalSource& src) {
    if (!classical_admissible(src)) throw HypothesisViolation("source " + src.id() + " is not admissible");
    const Expansion exp = classical_expansion(src);
    ParryPolynomial P = build_parry_polynomial(exp);
    const int d1 = exp.steps.front().d;
    std::vector<AlgebraicReal> roots = real_roots_in(P.poly, Rational(d1), Rational(d1 + 1));
    for (const auto& r : roots) {
        if (r.compare(Rational(d1)) != Order::Greater) continue;
        GBetaMap map(make_ring(r), SignConfiguration(static_cast<std::size_t>(d1) + 1, 1));
        auto pcf = detect_pcf(map);
        if (!pcf) continue;
        if (pcf->expansion.steps == exp.steps && pcf->k() == exp.shape.preperiod && pcf->p() == exp.shape.period)
            return {std::move(P), r, std::move(*pcf)};
    }
    throw NoRoot("no root of " + P.poly.to_string() + " in (" + std::to_string(d1) + ", " +
                 std::to_string(d1 + 1) + "] reproduces " + src.id());
}

std::vector<ConjugateRecord> conjugate_records(const IntPolynomial& p, double beta, const std::string& id) {
    std::vector<ComplexPoint> roots = all_roots(p);
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double d = std::abs(roots[i].value() - std::complex<double>(beta, 0));
        if (d < best) {
            best = d;
            nearest = i;
        }
    }
    std::vector<ConjugateRecord> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i == nearest) continue;
        ConjugateRecord r;
        r.z = roots[i];
        r.beta = beta;
        r.source_id = id;
        r.degree = p.degree();
        const std::complex<double> z = roots[i].value();
        r.is_real = std::abs(z.imag()) <= 1e-20 * std::max(1.0, std::abs(z));
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

struct Source {
    bool classical = false;
    std::vector<long> M;
    ClassicalSource c;
    std::string id() const { return classical ? c.id() : criterion_id(M); }
};

std::vector<ConjugateRecord> process(const Source& s) {
    if (s.classical) {
        ClassicalBeta cb = solve_classical(s.c);
        return conjugate_records(cb.parry.poly, cb.beta.to_double(), s.id());
    }
    CriterionSequence c = make_criterion(s.M);
    CriterionRoot root = solve_criterion_beta(c);
    verify_criterion_orbit(c, root.beta);
    return conjugate_records(c.polynomial(), root.beta.to_double(), s.id());
}

double angle_of(const ConjugateRecord& r) {
    const std::complex<double> z = r.z.value();
    return std::atan2(z.imag(), z.real());
}

} // namespace

ScanResult scan_omega(const ScanConfig& config) {
    std::vector<Source> sources;
    std::set<std::string> seen;
    auto add = [&](Source s) {
        if (seen.insert(s.id()).second) sources.push_back(std::move(s));
    };
    Rng rng(config.seed);
    if (!config.sources.empty()) {
        for (const auto& M : config.sources) add(Source{false, M, {}});
    } else if (config.mode == ScanMode::Exhaustive) {
        for (auto& M : enumerate_criteria(config.n_lo, config.n_hi, config.coefficient_bound, config.sample_count))
            add(Source{false, std::move(M), {}});
    } else {
        std::size_t draws = 0;
        while (sources.size() < config.sample_count && draws < 20 * config.sample_count + 100) {
            ++draws;
            add(Source{false, random_criterion(rng, config.n_lo, config.n_hi, config.coefficient_bound), {}});
        }
    }
    for (const auto& c : config.classical_sources) add(Source{true, {}, c});
    const std::size_t classical_target = config.classical_count >= 0
                                             ? static_cast<std::size_t>(config.classical_count)
                                             : config.sample_count / 10;
    if (config.classical_sources.empty()) {
        const int max_digit = static_cast<int>(std::clamp<long>(config.coefficient_bound, 1, 9));
        std::size_t got = 0, draws = 0;
        while (got < classical_target && draws < 20 * classical_target + 100) {
            ++draws;
            const std::size_t before = sources.size();
            add(Source{true, {}, random_classical(rng, max_digit)});
            got += sources.size() - before;
        }
    }

    ScanResult result;
    result.sources = sources.size();
    std::vector<std::vector<ConjugateRecord>> per(sources.size());
    std::vector<std::string> errors(sources.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(sources.size())));
    auto work = [&](unsigned t) {
        for (std::size_t i = t; i < sources.size(); i += jobs) {
            try {
                per[i] = process(sources[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
                if (errors[i].empty()) errors[i] = "failed";
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (!errors[i].empty()) result.failures.push_back({sources[i].id(), errors[i]});
        for (auto& r : per[i]) result.records.push_back(std::move(r));
    }
    std::stable_sort(result.records.begin(), result.records.end(), [](const ConjugateRecord& a, const ConjugateRecord& b) {
        if (a.source_id != b.source_id) return a.source_id < b.source_id;
        return angle_of(a) < angle_of(b);
    });
    std::sort(result.failures.begin(), result.failures.end(),
              [](const SourceFailure& a, const SourceFailure& b) { return a.source_id < b.source_id; });
    return result;
}

BoundsReport check_bounds(const std::vector<ConjugateRecord>& records, double bound, bool strict) {
    BoundsReport rep;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double m = records[i].z.abs();
        rep.max_modulus = std::max(rep.max_modulus, m);
        if (!records[i].is_real) rep.max_nonreal_modulus = std::max(rep.max_nonreal_modulus, m);
        if (m >= bound) rep.violations.push_back(i);
    }
    if (strict && !rep.violations.empty()) {
        std::ostringstream os;
        os << rep.violations.size() << " conjugates with modulus >= " << fmt17(bound) << ":";
        for (std::size_t k = 0; k < rep.violations.size() && k < 10; ++k) {
            const auto& r = records[rep.violations[k]];
            os << ' ' << r.source_id << " |z|=" << fmt17(r.z.abs());
        }
        throw BoundViolation(os.str());
    }
    return rep;
}

StarReport star_convexity_witness(const FPowerSeries& T, std::complex<double> lambda, double a) {
    if (!(a >= 1)) throw OutOfRange("scale factor must be >= 1");
    StarReport rep;
    rep.base_residual = std::abs(evaluate(T, lambda).value);
    std::vector<double> scaled(T.N());
    double ap = 1;
    rep.coefficients_ok = true;
    for (std::size_t j = 0; j < T.N(); ++j) {
        ap *= a;
        scaled[j] = T.coeffs[j] / ap;
        if (!(std::abs(scaled[j]) <= 1)) rep.coefficients_ok = false;
    }
    rep.scaled = FPowerSeries(scaled);
    // aλ may sit outside the unit disk, so evaluate the polynomial directly
    const std::complex<long double> w(static_cast<long double>(a) * lambda.real(),
                                      static_cast<long double>(a) * lambda.imag());
    std::complex<long double> acc = 0;
    for (std::size_t j = T.N(); j-- > 0;) acc = acc * w + static_cast<long double>(scaled[j]);
    acc = acc * w + 1.0L;
    rep.scaled_residual = static_cast<double>(std::abs(acc));
    return rep;
}

std::string records_csv(const std::vector<ConjugateRecord>& records) {
    std::string out = "re,im,beta,source_id,degree,is_real\n";
    for (const auto& r : records) {
        const std::complex<double> z = r.z.value();
        out += fmt17(z.real()) + ',' + fmt17(z.imag()) + ',' + fmt17(r.beta) + ",\"" + r.source_id + "\"," +
               std::to_string(r.degree) + ',' + (r.is_real ? "true" : "false") + '\n';
    }
    return out;
}

std::vector<ConjugateRecord> parse_records_csv(const std::string& text) {
    std::vector<ConjugateRecord> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (lineno == 1 && line.rfind("re,", 0) == 0)) continue;
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') quoted = !quoted;
            else if (ch == ',' && !quoted) {
                fields.push_back(cur);
                cur.clear();
            } else cur += ch;
        }
        fields.push_back(cur);
        if (fields.size() != 6) throw ParseError("line " + std::to_string(lineno) + ": expected 6 fields");
        try {
            ConjugateRecord r;
            r.z = ComplexPoint(std::complex<double>(std::stod(fields[0]), std::stod(fields[1])));
            r.beta = std::stod(fields[2]);
            r.source_id = fields[3];
            r.degree = std::stoi(fields[4]);
            r.is_real = fields[5] == "true";
            out.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw ParseError("line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return out;
}

std::string records_svg(const std::vector<ConjugateRecord>& records) {
    const double size = 600, c = size / 2, scale = 130;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    out += "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    out += "<line x1=\"0\" y1=\"300.000\" x2=\"600\" y2=\"300.000\" stroke=\"#ccc\"/>\n";
    out += "<line x1=\"300.000\" y1=\"0\" x2=\"300.000\" y2=\"600\" stroke=\"#ccc\"/>\n";
    for (double radius : {1.0, 2.0})
        out += "<circle cx=\"300.000\" cy=\"300.000\" r=\"" + fmt_coord(radius * scale) +
               "\" fill=\"none\" stroke=\"" + (radius == 1.0 ? "#888" : "#c33") + "\"/>\n";
    for (const auto& r : records) {
        const std::complex<double> z = r.z.value();
        out += "<circle cx=\"" + fmt_coord(c + scale * z.real()) + "\" cy=\"" + fmt_coord(c - scale * z.imag()) +
               "\" r=\"1.2\" fill=\"" + (r.is_real ? "#2a6" : "#236") + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace betalab
