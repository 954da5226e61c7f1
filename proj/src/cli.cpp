#include "betalab/cli.hpp"

#include "betalab/boundary.hpp"
#include "betalab/errors.hpp"
#include "betalab/format.hpp"
#include "betalab/json_io.hpp"
#include "betalab/parry.hpp"
#include "betalab/spectra.hpp"
#include "betalab/suites.hpp"
#include "betalab/unimodal.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

namespace betalab {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::logic_error&) {
        throw UsageError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::logic_error&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_long(t));
    if (out.empty()) throw UsageError("empty list");
    return out;
}

/// "3/2" or ascending coefficients with an isolating interval: "-1,-1,1@1,2".
AlgebraicReal parse_beta(const std::string& s) {
    const auto at = s.find('@');
    if (at == std::string::npos) return AlgebraicReal::from_rational(parse_rational(s));
    std::vector<Integer> coeffs;
    for (const auto& t : split(s.substr(0, at), ',')) coeffs.push_back(Integer(parse_long(t)));
    const auto iv = split(s.substr(at + 1), ',');
    if (iv.size() != 2) throw UsageError("beta interval must be lo,hi");
    return AlgebraicReal(IntPolynomial(std::move(coeffs)), parse_rational(iv[0]), parse_rational(iv[1]));
}

GBetaMap parse_map(const std::string& beta, const std::string& signs) {
    SignConfiguration E;
    for (long v : parse_longs(signs)) E.push_back(static_cast<int>(v));
    return GBetaMap(make_ring(parse_beta(beta)), E);
}

ZBetaElement parse_point(const GBetaMap& map, const std::string& x) {
    if (x == "one" || x == "1") return map.one();
    return map.element(parse_rational(x));
}

json point_json(const ZBetaElement& x, int branch) {
    return json{{"coords", to_json(x)}, {"value", x.to_double()}, {"branch", branch}};
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& content) {
    if (path) write_file_atomic(*path, content);
    else out << content;
}

json zeros_json(const std::vector<ComplexPoint>& zs) {
    json a = json::array();
    for (const auto& z : zs) {
        const auto v = z.value();
        a.push_back({{"re", v.real()}, {"im", v.imag()}, {"modulus", std::abs(v)}});
    }
    return a;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Computational lab for generalized beta-transformations", "betalab"};
    app.require_subcommand(1);
    bool as_json = false;
    unsigned jobs = 1;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    std::string beta, signs, x = "one", m_list, free_signs, config, grid, map_file, suite = "all", in_path,
                                         expansion_file;
    std::size_t max_steps = 1000, trunc = 400, n_max = 16;
    double tol = 1e-12;
    std::optional<std::string> out_path, svg_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;

    auto* expand_cmd = app.add_subcommand("expand", "expansion of a point");
    expand_cmd->add_option("--beta", beta, "rational or coeffs@lo,hi")->required();
    expand_cmd->add_option("--signs", signs, "sign configuration, e.g. 1,-1")->required();
    expand_cmd->add_option("--x", x, "rational point or 'one'");
    expand_cmd->add_option("--max", max_steps, "step budget");

    auto* orbit_cmd = app.add_subcommand("orbit", "exact orbit with PCF verdict");
    orbit_cmd->add_option("--beta", beta)->required();
    orbit_cmd->add_option("--signs", signs)->required();
    orbit_cmd->add_option("--x", x);
    orbit_cmd->add_option("--max", max_steps);

    auto* parry_cmd = app.add_subcommand("parry", "Parry polynomial and its zeros");
    parry_cmd->add_option("--beta", beta);
    parry_cmd->add_option("--signs", signs);
    parry_cmd->add_option("--expansion", expansion_file, "expansion JSON instead of a map");
    parry_cmd->add_option("--max", max_steps);

    auto* crit_cmd = app.add_subcommand("criterion", "PCF map from an M-sequence");
    crit_cmd->add_option("--m", m_list, "comma-separated M")->required();
    crit_cmd->add_option("--free-signs", free_signs, "signs for unconstrained E entries");

    auto* scan_cmd = app.add_subcommand("scan", "conjugate scan");
    scan_cmd->add_option("--config", config)->required();
    scan_cmd->add_option("--out", out_path, "CSV path (stdout if absent)");
    scan_cmd->add_option("--svg", svg_path);
    scan_cmd->add_option("--seed", seed);
    scan_cmd->add_option("--samples", samples);

    auto* boundary_cmd = app.add_subcommand("boundary", "boundary curve lambda_phi");
    boundary_cmd->add_option("--grid", grid, "lo:hi:step")->required();
    boundary_cmd->add_option("--trunc", trunc);
    boundary_cmd->add_option("--tol", tol);
    boundary_cmd->add_option("--out", out_path);
    boundary_cmd->add_option("--svg", svg_path);

    auto* uni_cmd = app.add_subcommand("unimodal", "normal form and lap entropy");
    uni_cmd->add_option("--map", map_file)->required();
    uni_cmd->add_option("--n", n_max, "lap horizon");

    auto* verify_cmd = app.add_subcommand("verify", "invariant suites");
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"identities", "bounds", "criterion", "all"}));
    verify_cmd->add_option("--seed", seed);

    auto* render_cmd = app.add_subcommand("render", "SVG from a CSV");
    render_cmd->add_option("--in", in_path)->required();
    render_cmd->add_option("--out", out_path)->required();

    // flags may follow the subcommand as well
    for (auto* sub : app.get_subcommands({})) {
        sub->add_flag("--json", as_json);
        sub->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*expand_cmd) {
            const GBetaMap map = parse_map(beta, signs);
            const Expansion e = expand(map, parse_point(map, x), max_steps);
            out << to_json(e).dump(2) << "\n";
            return 0;
        }
        if (*orbit_cmd) {
            const GBetaMap map = parse_map(beta, signs);
            const ZBetaElement x0 = parse_point(map, x);
            std::vector<ZBetaElement> pts{x0};
            std::optional<std::size_t> back; // index the orbit returns to
            while (pts.size() <= max_steps && !back) {
                const ZBetaElement y = step(map, pts.back()).next;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    if (pts[i].compare(y) == Order::Equal) back = i;
                if (!back) pts.push_back(y);
            }
            if (as_json) {
                json a = json::array();
                for (const auto& p : pts) a.push_back(point_json(p, classify(map, p)));
                json j{{"points", a}, {"finite", back.has_value()}};
                if (back) {
                    j["preperiod"] = *back;
                    j["period"] = pts.size() - *back;
                }
                out << j.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < pts.size(); ++i)
                    out << "f^" << i << " = " << pts[i].to_string() << "  (" << fmt17(pts[i].to_double()) << ", I_"
                        << classify(map, pts[i]) << ")\n";
                if (back)
                    out << "finite orbit: preperiod " << *back << ", period " << pts.size() - *back << "\n";
                else
                    out << "no repeat within " << max_steps << " steps\n";
            }
            return 0;
        }
        if (*parry_cmd) {
            Expansion e;
            if (!expansion_file.empty()) {
                e = expansion_from_json(parse_json(read_file(expansion_file)));
            } else {
                if (beta.empty() || signs.empty()) throw UsageError("parry needs --beta and --signs, or --expansion");
                const GBetaMap map = parse_map(beta, signs);
                auto pcf = detect_pcf(map, max_steps);
                if (!pcf) throw NotPostCriticallyFinite("orbit of 1 did not close within " + std::to_string(max_steps) + " steps");
                e = pcf->expansion;
            }
            const ParryPolynomial P = build_parry_polynomial(e);
            const auto zs = all_roots(P.poly);
            if (as_json) {
                out << json{{"parry", to_json(P)}, {"zeros", zeros_json(zs)}}.dump(2) << "\n";
            } else {
                out << "P(z) = " << P.poly.to_string() << "  (k = " << P.k << ", p = " << P.p << ")\n";
                for (const auto& z : zs)
                    out << "  " << fmt17(z.value().real()) << " " << (z.value().imag() < 0 ? "-" : "+") << " "
                        << fmt17(std::abs(z.value().imag())) << "i   |z| = " << fmt17(z.abs()) << "\n";
            }
            return 0;
        }
        if (*crit_cmd) {
            std::vector<int> fs;
            if (!free_signs.empty())
                for (long v : parse_longs(free_signs)) fs.push_back(static_cast<int>(v));
            const CriterionSequence c = make_criterion(parse_longs(m_list), fs);
            const CriterionRoot r = solve_criterion_beta(c);
            const CriterionOrbitReport rep = verify_criterion_orbit(c, r.beta);
            const AlgebraicReal b = r.beta.refine(Rational(1, 1000000));
            if (as_json) {
                json j = to_json(c);
                j["beta"] = to_json(b);
                j["beta_value"] = b.to_double();
                j["interior_roots"] = r.interior_roots;
                j["pcf"] = {{"confirmed", true}, {"k", rep.k}, {"p", rep.p}};
                out << j.dump(2) << "\n";
            } else {
                out << "M = " << criterion_id(c.M).substr(2) << "\n";
                out << "It = ";
                for (std::size_t i = 0; i < c.itinerary.size(); ++i) out << (i ? "," : "") << c.itinerary[i];
                out << "\nE = ";
                for (std::size_t i = 0; i < c.E.size(); ++i) out << (i ? "," : "") << c.E[i];
                out << "\npolynomial: " << c.polynomial().to_string('x') << "\n";
                out << "beta in (" << c.itinerary[0] << ", " << c.itinerary[0] + 1 << "): " << fmt17(b.to_double())
                    << "  isolated in [" << rational_to_string(b.lo()) << ", " << rational_to_string(b.hi()) << "]\n";
                out << "orbit check: f^{n-1}(1) = a(n)/beta exactly\n";
                out << "PCF confirmed: preperiod " << rep.k << ", period " << rep.p << "\n";
            }
            return 0;
        }
        if (*scan_cmd) {
            ScanConfig cfg = scan_config_from_json(parse_json(read_file(config)));
            if (seed) cfg.seed = *seed;
            if (samples) cfg.sample_count = *samples;
            if (jobs > 1) cfg.jobs = jobs;
            const ScanResult res = scan_omega(cfg);
            emit(out, out_path, records_csv(res.records));
            if (svg_path) write_file_atomic(*svg_path, records_svg(res.records));
            const BoundsReport b = check_bounds(res.records);
            std::ostream& info = out_path ? out : err;
            info << "sources " << res.sources << ", records " << res.records.size() << ", failures "
                 << res.failures.size() << ", max modulus " << fmt17(b.max_modulus) << ", max non-real modulus "
                 << fmt17(b.max_nonreal_modulus) << "\n";
            for (const auto& f : res.failures) err << "  " << f.source_id << ": " << f.message << "\n";
            return res.failures.empty() && b.violations.empty() ? 0 : 1;
        }
        if (*boundary_cmd) {
            const auto parts = split(grid, ':');
            if (parts.size() != 3) throw UsageError("grid must be lo:hi:step");
            const double lo = parse_double(parts[0]), hi = parse_double(parts[1]), st = parse_double(parts[2]);
            if (!(st > 0) || !(hi >= lo)) throw UsageError("grid needs lo <= hi and step > 0");
            std::vector<double> phis;
            const auto count = static_cast<std::size_t>(std::floor((hi - lo) / st + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i) phis.push_back(lo + static_cast<double>(i) * st);
            const BoundaryCurve curve = boundary_curve(phis, trunc, tol, jobs);
            emit(out, out_path, boundary_csv(curve));
            if (svg_path) write_file_atomic(*svg_path, boundary_svg(curve));
            for (const auto& f : curve.failures) err << "  phi = " << fmt17(f.phi) << ": " << f.message << "\n";
            if (curve.continuity_warnings) err << "continuity warnings: " << curve.continuity_warnings << "\n";
            return curve.failures.empty() ? 0 : 1;
        }
        if (*uni_cmd) {
            const PiecewiseLinearMap g = map_from_json(parse_json(read_file(map_file)));
            const NormalForm nf = normalize(g);
            const EntropyCheck ec = entropy_cross_check(nf, n_max);
            if (as_json) {
                json j{{"input_case", nf.input_case},
                       {"output_case", nf.output_case},
                       {"E", nf.map.signs()},
                       {"beta", to_json(nf.map.beta())},
                       {"conjugacy",
                        {{"offset", to_json(nf.conjugacy.offset)},
                         {"scale", to_json(nf.conjugacy.scale)},
                         {"flipped", nf.conjugacy.flipped}}},
                       {"normalized", to_json(nf.normalized)},
                       {"laps", to_json(ec.laps)},
                       {"log_beta", ec.log_beta},
                       {"gap", ec.gap}};
                out << j.dump(2) << "\n";
            } else {
                out << "case " << nf.input_case << " -> normal form case " << nf.output_case << ", E = ("
                    << nf.map.signs()[0] << "," << nf.map.signs()[1] << "), beta = " << fmt17(nf.map.beta().to_double())
                    << "\n";
                out << "trimmed to [" << fmt17(nf.conjugacy.offset.to_double()) << ", "
                    << fmt17((nf.conjugacy.offset + nf.conjugacy.scale).to_double()) << "]"
                    << (nf.conjugacy.flipped ? ", reflected" : "") << "\n";
                out << "L(n):";
                for (const auto& L : ec.laps.laps) out << " " << L.get_str();
                out << "\nlap estimate " << fmt17(ec.laps.estimate) << ", log beta " << fmt17(ec.log_beta) << ", gap "
                    << fmt17(ec.gap) << "\n";
            }
            return 0;
        }
        if (*verify_cmd) {
            std::vector<SuiteReport> reps;
            std::optional<Corpus> corpus;
            if (suite == "identities" || suite == "bounds" || suite == "all") {
                CorpusOptions opt;
                if (seed) opt.seed = *seed;
                opt.jobs = jobs;
                corpus = build_corpus(opt);
            }
            if (suite == "identities" || suite == "all") reps.push_back(suite_identities(*corpus));
            if (suite == "bounds" || suite == "all") reps.push_back(suite_bounds(*corpus));
            if (suite == "criterion" || suite == "all") reps.push_back(suite_criterion(seed.value_or(17)));
            bool ok = true;
            for (const auto& r : reps) {
                out << "suite " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
                for (const auto& l : r.lines) out << "  " << l << "\n";
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
        if (*render_cmd) {
            const std::string text = read_file(in_path);
            if (text.rfind("phi,lambda", 0) == 0) {
                BoundaryCurve curve;
                std::istringstream in(text);
                std::string row;
                std::getline(in, row);
                while (std::getline(in, row)) {
                    if (row.empty()) continue;
                    const auto f = split(row, ',');
                    if (f.size() != 5) throw ParseError("boundary CSV rows need 5 fields");
                    LambdaSolution s;
                    s.phi = parse_double(f[0]);
                    s.lambda = parse_double(f[1]);
                    s.alpha = parse_double(f[2]);
                    s.residual = parse_double(f[3]);
                    s.n_trunc = static_cast<std::size_t>(parse_long(f[4]));
                    curve.samples.push_back(s);
                }
                write_file_atomic(*out_path, boundary_svg(curve));
            } else {
                write_file_atomic(*out_path, records_svg(parse_records_csv(text)));
            }
            return 0;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolation& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const InvalidIsolation& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const InvalidMap& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const OutOfRange& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        // I/O problems with user-supplied paths
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace betalab
