#include "betalab/roots.hpp"

#include "betalab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace betalab {

namespace mp = boost::multiprecision;

namespace {

template <unsigned Bits>
using Float = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

template <class F>
struct Cx {
    F re, im;
};

template <class F> Cx<F> add(const Cx<F>& a, const Cx<F>& b) { return {a.re + b.re, a.im + b.im}; }
template <class F> Cx<F> sub(const Cx<F>& a, const Cx<F>& b) { return {a.re - b.re, a.im - b.im}; }
template <class F> Cx<F> mul(const Cx<F>& a, const Cx<F>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class F> F norm2(const Cx<F>& a) { return a.re * a.re + a.im * a.im; }
template <class F> Cx<F> div(const Cx<F>& a, const Cx<F>& b) {
    const F d = norm2(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class F> F modulus(const Cx<F>& a) {
    using std::sqrt;
    return sqrt(norm2(a));
}

// Horner for p and p' plus the running bound Σ|a_i||z|^i.
template <class F>
void horner(const std::vector<F>& a, const Cx<F>& z, Cx<F>& p, Cx<F>& dp, F& scale) {
    using std::abs;
    const F r = modulus(z);
    p = {a.back(), F(0)};
    dp = {F(0), F(0)};
    scale = abs(a.back());
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        dp = add(mul(dp, z), p);
        p = add(mul(p, z), Cx<F>{a[i], F(0)});
        scale = scale * r + abs(a[i]);
    }
}

// Gauss–Seidel Aberth–Ehrlich sweeps. Returns true once every root has a
// roundoff-level residual or a negligible correction.
template <class F>
bool aberth(const std::vector<F>& a, std::vector<Cx<F>>& z, int bits, int max_iterations) {
    using std::ldexp;
    const std::size_t n = z.size();
    const F unit = ldexp(F(1), -bits);
    const F resid_tol = unit * F(8 * static_cast<double>(n + 1));
    const F step_tol = unit * F(64);
    std::vector<char> done(n, 0);
    for (int it = 0; it < max_iterations; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < n; ++k) {
            Cx<F> p, dp;
            F scale;
            horner(a, z[k], p, dp, scale);
            if (modulus(p) <= resid_tol * scale) {
                done[k] = 1;
                continue;
            }
            Cx<F> sum{F(0), F(0)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const Cx<F> d = sub(z[k], z[j]);
                if (norm2(d) == 0) continue;
                sum = add(sum, div(Cx<F>{F(1), F(0)}, d));
            }
            Cx<F> ratio = norm2(dp) == 0 ? Cx<F>{F(1), F(0)} : div(p, dp);
            const Cx<F> denom = sub(Cx<F>{F(1), F(0)}, mul(ratio, sum));
            const Cx<F> w = norm2(denom) == 0 ? ratio : div(ratio, denom);
            z[k] = sub(z[k], w);
            const F zk = modulus(z[k]);
            done[k] = modulus(w) <= step_tol * (zk > F(1) ? zk : F(1));
            if (!done[k]) all = false;
        }
        if (all) return true;
    }
    return false;
}

template <class F>
bool residual_ok(const std::vector<F>& a, const std::vector<Cx<F>>& z, double eps) {
    for (const auto& r : z) {
        Cx<F> p, dp;
        F scale;
        horner(a, r, p, dp, scale);
        if (!(modulus(p) <= F(eps) * scale)) return false;
    }
    return true;
}

template <unsigned Bits>
bool polish(const std::vector<WideFloat>& coeffs, std::vector<Cx<WideFloat>>& roots, int bits,
            const RootOptions& opt) {
    using F = Float<Bits>;
    std::vector<F> a(coeffs.begin(), coeffs.end());
    std::vector<Cx<F>> z;
    z.reserve(roots.size());
    for (const auto& r : roots) z.push_back({F(r.re), F(r.im)});
    const bool converged = aberth(a, z, bits, opt.max_iterations);
    for (std::size_t i = 0; i < z.size(); ++i) roots[i] = {WideFloat(z[i].re), WideFloat(z[i].im)};
    return converged && residual_ok(a, z, opt.eps);
}

std::vector<ComplexPoint> solve(std::vector<WideFloat> coeffs, double cauchy, const RootOptions& opt) {
    // Exact zero roots first.
    std::size_t zeros = 0;
    while (zeros < coeffs.size() && coeffs[zeros] == 0) ++zeros;
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(zeros));
    const std::size_t n = coeffs.size() - 1;
    std::vector<ComplexPoint> out;
    for (std::size_t i = 0; i < zeros; ++i) out.emplace_back(WideFloat(0), WideFloat(0), opt.bits);

    if (n == 1) {
        out.emplace_back(WideFloat(-coeffs[0] / coeffs[1]), WideFloat(0), 512);
    } else if (n > 1) {
        std::vector<double> ad(coeffs.begin(), coeffs.end());
        std::vector<Cx<double>> zd(n);
        const double two_pi = 6.283185307179586;
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = two_pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
            zd[k] = {cauchy * std::cos(angle), cauchy * std::sin(angle)};
        }
        aberth(ad, zd, 52, 800);
        std::vector<Cx<WideFloat>> roots;
        for (const auto& r : zd) roots.push_back({WideFloat(r.re), WideFloat(r.im)});

        int bits = opt.bits;
        bool ok = false;
        for (int attempt = 0; attempt <= opt.retries && !ok; ++attempt, bits *= 2) {
            if (bits <= 128) ok = polish<128>(coeffs, roots, bits, opt);
            else if (bits <= 256) ok = polish<256>(coeffs, roots, bits, opt);
            else ok = polish<512>(coeffs, roots, std::min(bits, 500), opt);
            if (ok) break;
        }
        if (!ok) throw NonConvergence("root finder did not converge for degree " + std::to_string(n));
        for (const auto& r : roots) out.emplace_back(r.re, r.im, bits);
    }
    std::sort(out.begin(), out.end(), [](const ComplexPoint& x, const ComplexPoint& y) {
        if (x.re != y.re) return x.re < y.re;
        return x.im < y.im;
    });
    return out;
}

} // namespace

WideFloat ComplexPoint::wide_abs() const { return mp::sqrt(re * re + im * im); }

std::vector<ComplexPoint> all_roots(const IntPolynomial& p, const RootOptions& opt) {
    if (p.degree() < 1) throw std::invalid_argument("all_roots needs degree >= 1");
    std::vector<WideFloat> c;
    for (const auto& x : p.coeffs()) c.emplace_back(x.get_str());
    return solve(std::move(c), cauchy_bound(p).get_d(), opt);
}

std::vector<ComplexPoint> all_roots(const std::vector<double>& coeffs, const RootOptions& opt) {
    std::vector<double> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("all_roots needs degree >= 1");
    double bound = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c.back()));
    return solve(std::vector<WideFloat>(c.begin(), c.end()), bound + 1, opt);
}

double residual(const IntPolynomial& p, const ComplexPoint& z) {
    std::vector<WideFloat> a;
    for (const auto& x : p.coeffs()) a.emplace_back(x.get_str());
    Cx<WideFloat> v, dv;
    WideFloat scale;
    horner(a, Cx<WideFloat>{z.re, z.im}, v, dv, scale);
    return static_cast<double>(modulus(v));
}

} // namespace betalab
