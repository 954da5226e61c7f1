#pragma once

#include "betalab/parry.hpp"
#include "betalab/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace betalab {

struct CorpusEntry {
    std::string id;
    bool classical = false;
    std::optional<CriterionSequence> criterion;
    GBetaMap map;
    PcfResult pcf;
    ParryPolynomial parry;
};

struct CorpusOptions {
    std::uint64_t seed = 7;
    std::size_t criterion_count = 60;
    std::size_t classical_count = 20;
    int n_lo = 2, n_hi = 6;
    long bound = 50;
    int classical_digit = 9;
    unsigned jobs = 1;
};

struct Corpus {
    std::vector<CorpusEntry> entries; ///< criterion entries first, then classical, each sorted by id
    std::vector<SourceFailure> failures;
};

/// PCF maps from random M-sequences and random admissible classical words.
Corpus build_corpus(const CorpusOptions& opt);

struct SuiteReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;
};

SuiteReport suite_identities(const Corpus& corpus, std::uint64_t seed = 11, std::size_t points = 10,
                             std::size_t N = 400);
SuiteReport suite_bounds(const Corpus& corpus, std::uint64_t seed = 13, std::size_t samples = 1000);
SuiteReport suite_criterion(std::uint64_t seed = 17, std::size_t count = 100);

/// Roots of the Parry polynomial other than β.
std::vector<ComplexPoint> parry_conjugates(const CorpusEntry& e);

/// 1 + Σ a_j w^j with N in [1, max_n]; half the draws use a_j = ±1 only.
FPowerSeries random_series(Rng& rng, std::size_t max_n);

} // namespace betalab
