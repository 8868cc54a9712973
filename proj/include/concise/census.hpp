#pragma once

#include "concise/sigma2.hpp"

namespace concise {

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive census of the secant sigma_2 over F_p inside P(V_1 x ... x V_d)
// with all dim V_i = 2: membership is vanishing of every 3x3 minor of every
// flattening, and the concise variant weights each point by its fibre size.
struct CensusResult {
    int d = 0;
    long long p = 0;
    long long sigma2 = 0;        // projective points of the minor locus
    long long csigma2 = 0;       // fibre-weighted count
    long long rank_one = 0;      // points concise on no coordinate
    long long concise_two = 0;   // concise on exactly two coordinates
    long long concise_three_plus = 0;
    bool saw_exactly_one = false; // structural impossibility; reported if ever seen
};

struct CensusOptions {
    int threads = 0;        // 0: library default
    bool allow_large = false; // permit scans beyond the desk-scale guard
};

// Serial reference scan (kept for testing the parallel kernel against).
CensusResult census_scan_serial(int d, long long p, const CensusOptions& opts = {});

// OpenMP-parallel scan with a deterministic reduction.
CensusResult census_scan(int d, long long p, const CensusOptions& opts = {});

long long count_sigma2_points(int d, long long p, const CensusOptions& opts = {});
long long count_csigma2_points(int d, long long p, const CensusOptions& opts = {});

// Comparison of the census against the motive formulas at L = p.
struct CensusComparison {
    CensusResult census;
    long long sigma2_formula = 0;
    long long csigma2_formula = 0;
    bool sigma2_matches = false;
    bool csigma2_matches = false;
};

CensusComparison census_vs_motive(int d, long long p, const CensusOptions& opts = {});

} // namespace concise
