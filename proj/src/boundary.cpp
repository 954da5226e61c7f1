#include "betalab/boundary.hpp"

#include "betalab/errors.hpp"
#include "betalab/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <optional>
#include <thread>

namespace betalab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;
constexpr double kKinkTol = 1e-12;

double wrap(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

struct Kink {
    double theta;
    std::size_t n;
};

// Angle data for one φ, independent of r.
struct Sweep {
    double phi = 0;
    std::size_t N = 0;
    std::vector<std::complex<double>> rot;           // e^{inφ}, n = 0..N
    std::vector<Kink> kinks;                         // sorted by theta
    std::vector<std::pair<std::size_t, std::size_t>> groups; // [begin, end) into kinks
};

Sweep prepare(double phi, std::size_t N) {
    Sweep s;
    s.phi = phi;
    s.N = N;
    s.rot.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) s.rot[n] = std::polar(1.0, static_cast<double>(n) * phi);
    for (std::size_t n = 1; n <= N; ++n) {
        const double base = static_cast<double>(n) * phi;
        s.kinks.push_back({wrap(base + kPi / 2), n});
        s.kinks.push_back({wrap(base - kPi / 2), n});
    }
    std::sort(s.kinks.begin(), s.kinks.end(), [](const Kink& a, const Kink& b) {
        return a.theta != b.theta ? a.theta < b.theta : a.n < b.n;
    });
    for (std::size_t i = 0; i < s.kinks.size();) {
        std::size_t j = i + 1;
        while (j < s.kinks.size() && s.kinks[j].theta - s.kinks[i].theta < kKinkTol) ++j;
        s.groups.emplace_back(i, j);
        i = j;
    }
    // A group straddling 2π wraps onto the first one.
    if (s.groups.size() > 1 && s.kinks.front().theta + kTwoPi - s.kinks.back().theta < kKinkTol) {
        auto last = s.groups.back();
        s.groups.pop_back();
        std::vector<Kink> moved(s.kinks.begin() + static_cast<long>(last.first), s.kinks.end());
        s.kinks.resize(last.first);
        for (auto& k : moved) k.theta -= kTwoPi;
        s.kinks.insert(s.kinks.begin(), moved.begin(), moved.end());
        for (auto& g : s.groups) g.first += moved.size(), g.second += moved.size();
        s.groups.front().first = 0;
    }
    return s;
}

int sign_of(double x) { return x >= 0 ? 1 : -1; }

struct Gap {
    double value = 0;
    double theta = 0;
    long group = -1; // kink group where the minimum sits, -1 inside a piece
};

Gap gap(const Sweep& s, double r) {
    const std::size_t N = s.N, G = s.groups.size();
    std::vector<double> pw(N + 1);
    pw[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) pw[n] = pw[n - 1] * r;
    auto theta_of = [&](std::size_t g) {
        const double t = s.kinks[s.groups[g % G].first].theta;
        return g >= G ? t + kTwoPi : t;
    };
    const double mid = 0.5 * (theta_of(0) + theta_of(1));
    std::vector<int> a(N + 1, 1);
    std::complex<double> C = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        a[n] = sign_of(std::cos(static_cast<double>(n) * s.phi - mid));
        C += static_cast<double>(a[n]) * pw[n] * s.rot[n];
    }
    Gap best;
    best.value = INFINITY;
    for (std::size_t g = 0; g < G; ++g) {
        const double ta = theta_of(g), tb = theta_of(g + 1);
        const double ha = std::real(std::polar(1.0, -ta) * C);
        const double hb = std::real(std::polar(1.0, -tb) * C);
        if (ha < best.value) best = {ha, wrap(ta), static_cast<long>(g)};
        if (hb < best.value) best = {hb, wrap(tb), static_cast<long>((g + 1) % G)};
        const double psi = ta + wrap(std::arg(C) + kPi - ta);
        if (psi < tb && -std::abs(C) < best.value) best = {-std::abs(C), wrap(psi), -1};
        // Cross the next kink group.
        const auto [b, e] = s.groups[(g + 1) % G];
        for (std::size_t i = b; i < e; ++i) {
            const std::size_t n = s.kinks[i].n;
            C -= 2.0 * static_cast<double>(a[n]) * pw[n] * s.rot[n];
            a[n] = -a[n];
        }
    }
    return best;
}

std::complex<double> evaluate_on_ray(const std::vector<double>& coeffs, const Sweep& s, double r) {
    std::complex<double> v = 0.0;
    for (std::size_t n = coeffs.size(); n >= 1; --n) v = (v + coeffs[n - 1]) * (r * s.rot[1]);
    return v + 1.0;
}

} // namespace

FPowerSeries::FPowerSeries(std::vector<double> a) : coeffs(std::move(a)) {
    for (double c : coeffs)
        if (!(std::abs(c) <= 1)) throw OutOfRange("coefficient outside [-1, 1]");
}

std::vector<double> FPowerSeries::polynomial() const {
    std::vector<double> p{1.0};
    p.insert(p.end(), coeffs.begin(), coeffs.end());
    return p;
}

SeriesValue evaluate(const FPowerSeries& T, std::complex<double> w) {
    const double r = std::abs(w);
    if (!(r < 1)) throw OutsideDisk("|w| = " + fmt17(r) + " >= 1");
    std::complex<double> v = 0.0;
    for (std::size_t n = T.N(); n >= 1; --n) v = (v + T.coeffs[n - 1]) * w;
    SeriesValue out;
    out.value = v + 1.0;
    out.tail = std::pow(r, static_cast<double>(T.N() + 1)) / (1 - r);
    return out;
}

std::vector<int> rotation_coefficients(double phi, double alpha, std::size_t N, std::size_t* ties) {
    std::vector<int> a(N);
    std::size_t count = 0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double t = wrap(static_cast<double>(n) * phi - alpha);
        const double scale = std::max(1.0, static_cast<double>(n)) * 1e-12;
        if (t < scale || kTwoPi - t < scale || std::abs(t - kPi) < scale) {
            a[n - 1] = 1;
            ++count;
        } else {
            a[n - 1] = t < kPi ? 1 : -1;
        }
    }
    if (ties) *ties = count;
    return a;
}

LowerBoundReport zero_lower_bound_check(const FPowerSeries& T, std::complex<double> lambda, double tol) {
    LowerBoundReport rep;
    rep.modulus = std::abs(lambda);
    std::complex<double> v = 0.0;
    for (std::size_t n = T.N(); n >= 1; --n) v = (v + T.coeffs[n - 1]) * lambda;
    rep.value_residual = std::abs(v + 1.0);
    rep.passes = rep.modulus >= 0.5 - tol;
    rep.strict_required = std::any_of(T.coeffs.begin(), T.coeffs.end(), [](double c) { return std::abs(c) < 1; });
    rep.strict_holds = rep.modulus > 0.5;
    return rep;
}

double support_gap(double phi, std::size_t N, double r) { return gap(prepare(phi, N), r).value; }

Rational endpoint_lambda(bool at_pi) {
    // All a_j = -1 (at 0) or a_j = (-1)^{j+1} (at π): T(w) = 1 - |w| / (1 - |w|)
    // along the relevant ray, which vanishes where |w| = 1 - |w|.
    (void)at_pi;
    const Rational one(1);
    return one / (one + one);
}

LambdaSolution solve_lambda_phi(double phi, std::size_t N, double tol, double hint) {
    if (N < 1) throw OutOfRange("truncation must be at least 1");
    double p = wrap(phi);
    if (p > kPi) p = kTwoPi - p;
    if (p < 1e-9 || kPi - p < 1e-9) throw OutOfRange("phi must avoid the endpoints 0 and pi");
    const Sweep s = prepare(p, N);

    double lo = 0.5, hi = 1 - 1e-12;
    if (hint > 0.5 && hint < 1) {
        const double a = std::max(0.5, hint - 0.01), b = std::min(hi, hint + 0.01);
        if (gap(s, a).value < 0 && gap(s, b).value >= 0) lo = a, hi = b;
    }
    if (gap(s, hi).value < 0) throw NoRoot("no zero below modulus 1 at phi = " + fmt17(phi));
    LambdaSolution out;
    out.phi = phi;
    out.n_trunc = N;
    if (gap(s, lo).value >= 0) {
        hi = lo;
    } else {
        for (int it = 0; it < 200 && hi - lo > 4e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (gap(s, mid).value >= 0) hi = mid;
            else lo = mid;
        }
    }
    double r = hi;
    const Gap opt = gap(s, r);
    const double theta = opt.theta;

    // Optimal coefficients: ±1 off the kink group, a common free parameter on it.
    std::vector<double> coeffs(N);
    std::vector<std::size_t> group;
    std::vector<double> eps;
    const std::complex<double> v = std::complex<double>(0, 1) * std::polar(1.0, theta);
    if (opt.group >= 0) {
        const auto [b, e] = s.groups[static_cast<std::size_t>(opt.group)];
        for (std::size_t i = b; i < e; ++i) group.push_back(s.kinks[i].n);
        std::sort(group.begin(), group.end());
    }
    for (std::size_t n = 1; n <= N; ++n) {
        if (std::binary_search(group.begin(), group.end(), n)) continue;
        coeffs[n - 1] = sign_of(std::cos(static_cast<double>(n) * p - theta));
    }
    for (std::size_t n : group) eps.push_back(sign_of(std::real(std::conj(v) * s.rot[n])));

    double u = 0;
    if (!group.empty()) {
        auto fill = [&](double uu) {
            for (std::size_t i = 0; i < group.size(); ++i) coeffs[group[i] - 1] = uu * eps[i];
        };
        auto F = [&](double rr, double uu, std::complex<double>& Fr, std::complex<double>& Fu) {
            std::complex<double> val = 1.0, dr = 0.0, du = 0.0;
            double pw = 1;
            for (std::size_t n = 1; n <= N; ++n) {
                const double prev = pw;
                pw *= rr;
                const bool in_group = std::binary_search(group.begin(), group.end(), n);
                double c = coeffs[n - 1];
                if (in_group) {
                    const double e = eps[static_cast<std::size_t>(
                        std::lower_bound(group.begin(), group.end(), n) - group.begin())];
                    c = uu * e;
                    du += e * pw * s.rot[n];
                }
                val += c * pw * s.rot[n];
                dr += c * static_cast<double>(n) * prev * s.rot[n];
            }
            Fr = dr;
            Fu = du;
            return val;
        };
        // Start from the value that closes the gap exactly at r.
        fill(0);
        std::complex<double> Fr, Fu;
        const std::complex<double> rest = F(r, 0, Fr, Fu);
        double sum = 0;
        for (std::size_t i = 0; i < group.size(); ++i) sum += std::pow(r, static_cast<double>(group[i]));
        u = std::real(-rest * std::conj(v)) / sum;
        // Damped Newton on (r, u).
        double rr = r, uu = u;
        std::complex<double> val = F(rr, uu, Fr, Fu);
        for (int it = 0; it < 30 && std::abs(val) > 1e-16; ++it) {
            const double det = Fr.real() * Fu.imag() - Fu.real() * Fr.imag();
            if (det == 0) break;
            const double dr = (-val.real() * Fu.imag() + Fu.real() * val.imag()) / det;
            const double du = (-Fr.real() * val.imag() + Fr.imag() * val.real()) / det;
            double step = 1;
            bool improved = false;
            for (int k = 0; k < 30; ++k, step *= 0.5) {
                std::complex<double> a2, b2;
                const std::complex<double> trial = F(rr + step * dr, uu + step * du, a2, b2);
                if (std::abs(trial) < std::abs(val)) {
                    rr += step * dr;
                    uu += step * du;
                    val = trial;
                    Fr = a2;
                    Fu = b2;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        if (std::abs(uu) <= 1 + 1e-9 && std::abs(rr - r) < 1e-9) {
            r = rr;
            u = std::clamp(uu, -1.0, 1.0);
        }
        fill(u);
        out.anomalous_index = group.front();
        out.anomalous_value = u * eps.front();
    }
    out.lambda = r;
    out.alpha = wrap(theta - kPi / 2);
    out.coefficients = coeffs;
    out.residual = std::abs(evaluate_on_ray(coeffs, s, r));
    if (!group.empty()) {
        std::vector<double> pure = coeffs;
        for (std::size_t i = 0; i < group.size(); ++i) pure[group[i] - 1] = (u >= 0 ? 1.0 : -1.0) * eps[i];
        out.pure_residual = std::abs(evaluate_on_ray(pure, s, r));
    } else {
        out.pure_residual = out.residual;
    }
    rotation_coefficients(p, out.alpha, N, &out.ties);
    out.certified = true;
    for (double rp = r - 1e-3; rp > 0.5; rp -= 1e-3)
        if (gap(s, rp).value >= 0) {
            out.certified = false;
            break;
        }
    (void)tol;
    return out;
}

BoundaryCurve boundary_curve(const std::vector<double>& grid, std::size_t N, double tol, unsigned jobs) {
    BoundaryCurve curve;
    const std::size_t n = grid.size();
    std::vector<std::optional<LambdaSolution>> results(n);
    std::vector<std::string> errors(n);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    // every sample starts cold so the output does not depend on the thread count
    auto work = [&](unsigned t) {
        for (std::size_t i = t; i < n; i += jobs) {
            try {
                results[i] = solve_lambda_phi(grid[i], N, tol);
            } catch (const Error& e) {
                errors[i] = e.what();
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
    for (std::size_t i = 0; i < n; ++i) {
        if (results[i]) curve.samples.push_back(std::move(*results[i]));
        else curve.failures.push_back({grid[i], errors[i]});
    }
    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        const auto& a = curve.samples[i - 1];
        const auto& b = curve.samples[i];
        if (std::abs(b.lambda - a.lambda) > curve.slope_bound * std::abs(b.phi - a.phi))
            ++curve.continuity_warnings;
    }
    return curve;
}

std::string boundary_csv(const BoundaryCurve& curve) {
    std::string out = "phi,lambda,alpha,residual,n_trunc\n";
    for (const auto& s : curve.samples)
        out += fmt17(s.phi) + "," + fmt17(s.lambda) + "," + fmt17(s.alpha) + "," + fmt17(s.residual) + "," +
               std::to_string(s.n_trunc) + "\n";
    return out;
}

std::string boundary_svg(const BoundaryCurve& curve) {
    const double size = 600, c = size / 2, scale = 130;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n"
        << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n"
        << "<line x1=\"0\" y1=\"300\" x2=\"600\" y2=\"300\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n"
        << "<line x1=\"300\" y1=\"0\" x2=\"300\" y2=\"600\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
    for (double rad : {2.0, 1.59, 1.0})
        out << "<circle cx=\"300\" cy=\"300\" r=\"" << fmt_coord(rad * scale)
            << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\" stroke-width=\"0.7\"/>\n";
    for (int mirror : {1, -1}) {
        if (curve.samples.empty()) break;
        out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.2\" points=\"";
        bool first = true;
        for (const auto& s : curve.samples) {
            const double R = 1 / s.lambda;
            const double x = c + scale * R * std::cos(s.phi);
            const double y = c - mirror * scale * R * std::sin(s.phi);
            out << (first ? "" : " ") << fmt_coord(x) << "," << fmt_coord(y);
            first = false;
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace betalab
