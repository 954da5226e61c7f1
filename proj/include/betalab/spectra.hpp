#pragma once

#include "betalab/boundary.hpp"
#include "betalab/parry.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace betalab {

/// Portable deterministic generator: mt19937_64 with rejection sampling, so
/// streams agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    long between(long lo, long hi);
    /// Uniform in [0, 1).
    double unit();

private:
    std::mt19937_64 engine_;
};

struct ConjugateRecord {
    ComplexPoint z;
    double beta = 0;
    std::string source_id;
    int degree = 0;
    bool is_real = false;
};

enum class ScanMode { Exhaustive, Random };

/// Eventually periodic digit string (prefix)(period)^∞ for an all-increasing map.
struct ClassicalSource {
    std::vector<int> prefix;
    std::vector<int> period;
    std::string id() const;
};

struct ScanConfig {
    int n_lo = 2, n_hi = 4;
    long coefficient_bound = 10;
    std::size_t sample_count = 100;
    std::uint64_t seed = 1;
    ScanMode mode = ScanMode::Random;
    std::vector<std::vector<long>> sources;          ///< explicit M-sequences (used instead of sampling)
    std::vector<ClassicalSource> classical_sources;  ///< explicit classical sources
    long classical_count = -1;                       ///< sampled classical sources; -1 means sample_count / 10
    unsigned jobs = 1;
};

struct SourceFailure {
    std::string source_id;
    std::string message;
};

struct ScanResult {
    std::vector<ConjugateRecord> records;
    std::vector<SourceFailure> failures;
    std::size_t sources = 0;
};

std::string criterion_id(const std::vector<long>& M);

/// Random valid M-sequence with n in [n_lo, n_hi] and entries bounded by `bound`.
std::vector<long> random_criterion(Rng& rng, int n_lo, int n_hi, long bound);
/// All valid M-sequences in lexicographic order of (n, M), up to `limit`.
std::vector<std::vector<long>> enumerate_criteria(int n_lo, int n_hi, long bound, std::size_t limit);
/// Random admissible classical source with leading digit at most max_digit.
ClassicalSource random_classical(Rng& rng, int max_digit);

/// The expansion of 1 the source describes, in canonical form.
Expansion classical_expansion(const ClassicalSource& src);
/// Admissible for the all-increasing order and not ending in zeros.
bool classical_admissible(const ClassicalSource& src);

struct ClassicalBeta {
    ParryPolynomial parry;
    AlgebraicReal beta;
    PcfResult pcf;
};
/// β as the root of the Parry polynomial in (d1, d1 + 1] whose exact orbit
/// reproduces the source. Throws NoRoot.
ClassicalBeta solve_classical(const ClassicalSource& src);

/// Zeros of p other than β (the root nearest β is dropped).
std::vector<ConjugateRecord> conjugate_records(const IntPolynomial& p, double beta, const std::string& id);

ScanResult scan_omega(const ScanConfig& config);

struct BoundsReport {
    double max_modulus = 0;
    double max_nonreal_modulus = 0;
    std::vector<std::size_t> violations; ///< indices with |z| >= bound
};

/// Every |z| < bound (2 by default). Throws BoundViolation when `strict`.
BoundsReport check_bounds(const std::vector<ConjugateRecord>& records, double bound = 2.0, bool strict = false);

struct StarReport {
    double base_residual = 0;     ///< |T(λ)|
    bool coefficients_ok = false; ///< every a_j / a^j in [-1, 1]
    double scaled_residual = 0;   ///< |T̄(aλ)|
    FPowerSeries scaled;
};

/// T̄(w) = T(w / a): checks its coefficients and its zero at aλ. Throws OutOfRange for a < 1.
StarReport star_convexity_witness(const FPowerSeries& T, std::complex<double> lambda, double a);

/// re,im,beta,source_id,degree,is_real
std::string records_csv(const std::vector<ConjugateRecord>& records);
std::vector<ConjugateRecord> parse_records_csv(const std::string& text);
/// Scatter plot with unit-circle and radius-2 overlays.
std::string records_svg(const std::vector<ConjugateRecord>& records);

} // namespace betalab
