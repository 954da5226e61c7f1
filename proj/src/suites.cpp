#include "betalab/suites.hpp"

#include "betalab/errors.hpp"
#include "betalab/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

namespace betalab {

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += jobs) f(i);
        });
    for (auto& th : pool) th.join();
}

std::optional<CorpusEntry> criterion_entry(const std::vector<long>& M) {
    CriterionSequence c = make_criterion(M);
    CriterionRoot root = solve_criterion_beta(c);
    verify_criterion_orbit(c, root.beta);
    GBetaMap map = criterion_map(c, root.beta);
    auto pcf = detect_pcf(map);
    if (!pcf) throw NotPostCriticallyFinite("orbit of 1 did not close");
    ParryPolynomial parry = build_parry_polynomial(pcf->expansion);
    return CorpusEntry{criterion_id(M), false, std::move(c), std::move(map), std::move(*pcf), std::move(parry)};
}

std::optional<CorpusEntry> classical_entry(const ClassicalSource& s) {
    ClassicalBeta cb = solve_classical(s);
    GBetaMap map(make_ring(cb.beta), SignConfiguration(static_cast<std::size_t>(cb.parry.expansion.steps.front().d) + 1, 1));
    return CorpusEntry{s.id(), true, std::nullopt, std::move(map), std::move(cb.pcf), std::move(cb.parry)};
}

std::string line(const std::string& label, bool ok, const std::string& detail) {
    return label + ": " + (ok ? "PASS" : "FAIL") + " (" + detail + ")";
}

std::complex<double> random_point(Rng& rng, double rmin, double rmax) {
    const double r = rmin + (rmax - rmin) * rng.unit();
    const double t = 2 * std::numbers::pi * rng.unit();
    return std::polar(r, t);
}

} // namespace

Corpus build_corpus(const CorpusOptions& opt) {
    Rng rng(opt.seed);
    std::vector<std::vector<long>> Ms;
    std::set<std::string> seen;
    for (std::size_t draws = 0; Ms.size() < opt.criterion_count && draws < 50 * opt.criterion_count + 100; ++draws) {
        auto M = random_criterion(rng, opt.n_lo, opt.n_hi, opt.bound);
        if (seen.insert(criterion_id(M)).second) Ms.push_back(std::move(M));
    }
    std::vector<ClassicalSource> Cs;
    for (std::size_t draws = 0; Cs.size() < opt.classical_count && draws < 50 * opt.classical_count + 100; ++draws) {
        auto s = random_classical(rng, opt.classical_digit);
        if (seen.insert(s.id()).second) Cs.push_back(std::move(s));
    }
    std::sort(Ms.begin(), Ms.end(), [](const auto& a, const auto& b) { return criterion_id(a) < criterion_id(b); });
    std::sort(Cs.begin(), Cs.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });

    const std::size_t total = Ms.size() + Cs.size();
    std::vector<std::optional<CorpusEntry>> slots(total);
    std::vector<std::string> errors(total);
    parallel_for(total, opt.jobs, [&](std::size_t i) {
        try {
            slots[i] = i < Ms.size() ? criterion_entry(Ms[i]) : classical_entry(Cs[i - Ms.size()]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    Corpus out;
    for (std::size_t i = 0; i < total; ++i) {
        if (slots[i]) out.entries.push_back(std::move(*slots[i]));
        else out.failures.push_back({i < Ms.size() ? criterion_id(Ms[i]) : Cs[i - Ms.size()].id(), errors[i]});
    }
    return out;
}

std::vector<ComplexPoint> parry_conjugates(const CorpusEntry& e) {
    std::vector<ComplexPoint> roots = all_roots(e.parry.poly);
    const double beta = e.map.beta().to_double();
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (std::abs(roots[i].value() - beta) < std::abs(roots[nearest].value() - beta)) nearest = i;
    roots.erase(roots.begin() + static_cast<long>(nearest));
    return roots;
}

FPowerSeries random_series(Rng& rng, std::size_t max_n) {
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<long>(max_n)));
    const bool signs_only = rng.below(2) == 0;
    std::vector<double> a(n);
    for (auto& x : a) x = signs_only ? (rng.below(2) ? 1.0 : -1.0) : 2 * rng.unit() - 1;
    return FPowerSeries(std::move(a));
}

SuiteReport suite_identities(const Corpus& corpus, std::uint64_t seed, std::size_t points, std::size_t N) {
    SuiteReport rep{"identities", true, {}};
    std::size_t recursion_fail = 0, equiv_fail = 0, factor_fail = 0, zeros_checked = 0;
    double worst_factor = 0;
    Rng rng(seed);
    for (const auto& e : corpus.entries) {
        const std::size_t steps = 2 * (e.pcf.orbit.size() + 1);
        if (check_recursion_identity(e.map, e.pcf, steps)) {
            ++recursion_fail;
            rep.lines.push_back("  recursion identity fails for " + e.id);
        }
        for (const auto& z : parry_conjugates(e)) {
            if (z.abs() <= 1.05) continue;
            ++zeros_checked;
            const auto r = verify_zero_equivalence(e.parry, z, N, 1e-8, 1e-6);
            if (!r.poly_vanishes || !r.consistent()) {
                ++equiv_fail;
                rep.lines.push_back("  zero equivalence fails for " + e.id + " at |z| = " + fmt17(z.abs()));
            }
        }
        for (std::size_t i = 0; i < points; ++i) {
            const std::complex<double> z = random_point(rng, 1.1, 3.0);
            const auto f = verify_factor_identity(e.map, e.pcf, z, N);
            worst_factor = std::max(worst_factor, f.discrepancy);
            if (!(f.discrepancy < 1e-10)) ++factor_fail;
            const auto r = verify_zero_equivalence(e.parry, ComplexPoint(z), N, 1e-8, 1e-6);
            if (!r.consistent()) {
                ++equiv_fail;
                rep.lines.push_back("  zero equivalence disagrees for " + e.id + " at a test point");
            }
        }
    }
    const bool corpus_ok = corpus.failures.empty();
    rep.lines.insert(rep.lines.begin(),
                     {line("corpus", corpus_ok,
                           std::to_string(corpus.entries.size()) + " maps, " + std::to_string(corpus.failures.size()) +
                               " failures"),
                      line("recursion", recursion_fail == 0, std::to_string(recursion_fail) + " failures"),
                      line("zero equivalence", equiv_fail == 0,
                           std::to_string(zeros_checked) + " zeros, " + std::to_string(equiv_fail) + " failures"),
                      line("factor identity", factor_fail == 0, "max discrepancy " + fmt17(worst_factor))});
    for (const auto& f : corpus.failures) rep.lines.push_back("  corpus failure " + f.source_id + ": " + f.message);
    rep.passed = corpus_ok && recursion_fail == 0 && equiv_fail == 0 && factor_fail == 0;
    return rep;
}

SuiteReport suite_bounds(const Corpus& corpus, std::uint64_t seed, std::size_t samples) {
    SuiteReport rep{"bounds", true, {}};
    const double golden = (1 + std::sqrt(5.0)) / 2;
    double max_all = 0, max_classical = 0;
    std::size_t over2 = 0, over_golden = 0;
    for (const auto& e : corpus.entries)
        for (const auto& z : parry_conjugates(e)) {
            const double m = z.abs();
            max_all = std::max(max_all, m);
            if (!(m < 2)) ++over2;
            if (e.classical) {
                max_classical = std::max(max_classical, m);
                if (!(m <= golden + 1e-6)) ++over_golden;
            }
        }
    rep.lines.push_back(line("conjugates below 2", over2 == 0, "max modulus " + fmt17(max_all)));
    rep.lines.push_back(line("classical below golden ratio", over_golden == 0, "max modulus " + fmt17(max_classical)));

    Rng rng(seed);
    double min_zero = std::numeric_limits<double>::infinity();
    std::size_t low = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const FPowerSeries T = random_series(rng, 40);
        for (const auto& w : all_roots(T.polynomial())) {
            min_zero = std::min(min_zero, w.abs());
            if (!(w.abs() >= 0.5 - 1e-9)) ++low;
        }
    }
    rep.lines.push_back(line("zeros at least 1/2", low == 0, "min modulus " + fmt17(min_zero)));

    std::size_t star_fail = 0, star_done = 0;
    double worst_star = 0;
    while (star_done < samples / 10) {
        const FPowerSeries T = random_series(rng, 30);
        std::vector<ComplexPoint> zs;
        for (const auto& w : all_roots(T.polynomial()))
            if (w.abs() < 1) zs.push_back(w);
        if (zs.empty()) continue;
        const std::complex<double> lam = zs[rng.below(zs.size())].value();
        const double a = 1 + (std::min(4.0, 1 / std::abs(lam)) - 1) * rng.unit();
        const StarReport s = star_convexity_witness(T, lam, a);
        worst_star = std::max(worst_star, s.scaled_residual);
        if (!s.coefficients_ok || !(s.scaled_residual < 1e-8)) ++star_fail;
        ++star_done;
    }
    rep.lines.push_back(line("star convexity", star_fail == 0,
                             std::to_string(star_done) + " triples, max residual " + fmt17(worst_star)));
    rep.passed = over2 == 0 && over_golden == 0 && low == 0 && star_fail == 0;
    return rep;
}

SuiteReport suite_criterion(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"criterion", true, {}};
    Rng rng(seed);
    std::vector<std::vector<long>> Ms{{3, 1, -1}};
    while (Ms.size() < count + 1) Ms.push_back(random_criterion(rng, 2, 6, 50));
    std::size_t fails = 0;
    for (const auto& M : Ms) {
        try {
            const CriterionSequence c = make_criterion(M);
            const CriterionRoot r = solve_criterion_beta(c);
            const auto orbit = verify_criterion_orbit(c, r.beta);
            if (r.beta.compare(Rational(c.itinerary[0])) != Order::Greater ||
                r.beta.compare(Rational(c.itinerary[0] + 1)) != Order::Less)
                throw VerificationFailure(0, "beta outside (It(1), It(1)+1)");
            if (M == std::vector<long>{3, 1, -1})
                rep.lines.push_back("  M = (3,1,-1): beta = " + fmt17(r.beta.to_double()) + ", k = " +
                                    std::to_string(orbit.k) + ", p = " + std::to_string(orbit.p));
        } catch (const std::exception& e) {
            ++fails;
            rep.lines.push_back("  " + criterion_id(M) + ": " + e.what());
        }
    }
    rep.lines.insert(rep.lines.begin(),
                     line("criterion", fails == 0, std::to_string(Ms.size()) + " sequences, " + std::to_string(fails) + " failures"));
    rep.passed = fails == 0;
    return rep;
}

} // namespace betalab
