#include "concise/census.hpp"

#include <array>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace concise {

namespace {

constexpr int kMaxSlots = 32; // 2^d entries, d <= 5

struct ScanContext {
    int d;
    long long p;
    int n;                         // 2^d tensor entries
    std::vector<uint32_t> bips;    // bipartition masks with both sides >= 2
    std::vector<long long> fibre;  // fibre sizes by conciseness stratum
    long long p2p1;                // p^2 + p + 1
    long long rank_one_fibre;
};

// rank of the flattening given by mask S, capped at 3 (we only need <=2 or not)
int flattening_rank_capped(const ScanContext& ctx, const uint8_t* T, uint32_t S, int cap) {
    int nrows = 1 << __builtin_popcount(S);
    int ncols = ctx.n / nrows;
    // gather into a row-major scratch (sizes <= 16x16 for d <= 5 with |S|<=4)
    std::array<int64_t, 1024> M;
    for (int idx = 0; idx < ctx.n; ++idx) {
        int r = 0, c = 0;
        for (int bit = ctx.d - 1; bit >= 0; --bit) {
            int v = (idx >> bit) & 1;
            if (S & (1u << (ctx.d - 1 - bit))) r = r * 2 + v;
            else c = c * 2 + v;
        }
        M[static_cast<size_t>(r) * ncols + c] = T[idx];
    }
    const long long p = ctx.p;
    int rank = 0;
    for (int col = 0; col < ncols && rank < nrows; ++col) {
        int piv = -1;
        for (int r = rank; r < nrows; ++r)
            if (M[static_cast<size_t>(r) * ncols + col] % p != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < ncols; ++j)
                std::swap(M[static_cast<size_t>(piv) * ncols + j], M[static_cast<size_t>(rank) * ncols + j]);
        // normalize pivot row
        long long pv = M[static_cast<size_t>(rank) * ncols + col] % p;
        if (pv < 0) pv += p;
        long long inv = 1;
        {
            // Fermat inverse for small prime p
            long long b = pv, e = p - 2, m = p;
            long long acc = 1;
            while (e) {
                if (e & 1) acc = acc * b % m;
                b = b * b % m;
                e >>= 1;
            }
            inv = acc;
        }
        for (int r = rank + 1; r < nrows; ++r) {
            long long f = M[static_cast<size_t>(r) * ncols + col] % p;
            if (f == 0) continue;
            f = f * inv % p;
            for (int j = col; j < ncols; ++j) {
                M[static_cast<size_t>(r) * ncols + j] =
                    (M[static_cast<size_t>(r) * ncols + j] - f * M[static_cast<size_t>(rank) * ncols + j]) % p;
            }
        }
        ++rank;
        if (rank >= cap) return rank;
    }
    return rank;
}

// conciseness on coordinate i: the 2 x 2^{d-1} flattening has rank 2
bool concise_on(const ScanContext& ctx, const uint8_t* T, int i) {
    // rows indexed by bit i of the entry index
    const long long p = ctx.p;
    int half = ctx.n / 2;
    int shift = ctx.d - 1 - i;
    // collect row0, row1
    std::array<int64_t, 16> r0{}, r1{};
    for (int c = 0; c < half; ++c) {
        int low = c & ((1 << shift) - 1);
        int high = c >> shift;
        int idx0 = (high << (shift + 1)) | low;
        int idx1 = idx0 | (1 << shift);
        r0[c] = T[idx0];
        r1[c] = T[idx1];
    }
    // rank 2 iff some 2x2 minor is nonzero
    for (int a = 0; a < half; ++a)
        for (int b = a + 1; b < half; ++b) {
            long long det = (r0[a] * r1[b] - r0[b] * r1[a]) % p;
            if (det != 0) return true;
        }
    return false;
}

ScanContext make_context(int d, long long p) {
    if (d < 3 || d > 5) throw TooLarge("census supports 3 <= d <= 5");
    if (!is_prime(p)) throw std::invalid_argument("census modulus must be prime");
    ScanContext ctx;
    ctx.d = d;
    ctx.p = p;
    ctx.n = 1 << d;
    for (uint32_t s = 1; s < (1u << d) / 2; ++s) {
        int k = __builtin_popcount(s);
        if (k >= 2 && d - k >= 2) ctx.bips.push_back(s);
    }
    ctx.p2p1 = p * p + p + 1;
    ctx.rank_one_fibre = segre_fibre_motive(d).eval(p);
    return ctx;
}

struct Tally {
    long long sigma2 = 0;
    long long csigma2 = 0;
    long long rank_one = 0;
    long long concise_two = 0;
    long long concise_three_plus = 0;
    bool saw_exactly_one = false;

    void absorb(const Tally& o) {
        sigma2 += o.sigma2;
        csigma2 += o.csigma2;
        rank_one += o.rank_one;
        concise_two += o.concise_two;
        concise_three_plus += o.concise_three_plus;
        saw_exactly_one = saw_exactly_one || o.saw_exactly_one;
    }
};

void scan_one(const ScanContext& ctx, const uint8_t* T, Tally& tally) {
    for (uint32_t s : ctx.bips)
        if (flattening_rank_capped(ctx, T, s, 3) > 2) return;
    tally.sigma2 += 1;
    int conc = 0;
    for (int i = 0; i < ctx.d; ++i)
        if (concise_on(ctx, T, i)) ++conc;
    if (conc >= 3) {
        tally.concise_three_plus += 1;
        tally.csigma2 += 1;
    } else if (conc == 2) {
        tally.concise_two += 1;
        tally.csigma2 += ctx.p2p1;
    } else if (conc == 0) {
        tally.rank_one += 1;
        tally.csigma2 += ctx.rank_one_fibre;
    } else {
        tally.saw_exactly_one = true;
    }
}

// Projective representatives: entries before `first` are zero, entry `first`
// is 1 and the remaining n-1-first entries enumerate all of F_p. The suffix
// is encoded as an integer in [0, p^(n-1-first)).
void decode(const ScanContext& ctx, int first, unsigned long long code, uint8_t* T) {
    for (int i = 0; i < first; ++i) T[i] = 0;
    T[first] = 1;
    for (int i = ctx.n - 1; i > first; --i) {
        T[i] = static_cast<uint8_t>(code % ctx.p);
        code /= ctx.p;
    }
}

unsigned long long pow_ll(long long b, int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<unsigned long long>(b);
    return r;
}

} // namespace

CensusResult census_scan_serial(int d, long long p, const CensusOptions& opts) {
    ScanContext ctx = make_context(d, p);
    double points = std::pow(static_cast<double>(p), ctx.n);
    if (points > 5e7 && !opts.allow_large)
        throw TooLarge("scan exceeds the desk-scale guard; pass allow_large to override");
    Tally tally;
    uint8_t T[kMaxSlots];
    for (int first = 0; first < ctx.n; ++first) {
        unsigned long long total = pow_ll(p, ctx.n - 1 - first);
        for (unsigned long long code = 0; code < total; ++code) {
            decode(ctx, first, code, T);
            scan_one(ctx, T, tally);
        }
    }
    CensusResult out;
    out.d = d;
    out.p = p;
    out.sigma2 = tally.sigma2;
    out.csigma2 = tally.csigma2;
    out.rank_one = tally.rank_one;
    out.concise_two = tally.concise_two;
    out.concise_three_plus = tally.concise_three_plus;
    out.saw_exactly_one = tally.saw_exactly_one;
    return out;
}

CensusResult census_scan(int d, long long p, const CensusOptions& opts) {
    ScanContext ctx = make_context(d, p);
    double points = std::pow(static_cast<double>(p), ctx.n);
    if (points > 5e7 && !opts.allow_large)
        throw TooLarge("scan exceeds the desk-scale guard; pass allow_large to override");
#ifdef _OPENMP
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
    Tally tally;
    for (int first = 0; first < ctx.n; ++first) {
        unsigned long long total = pow_ll(p, ctx.n - 1 - first);
        long long chunks = 1024;
        unsigned long long chunk = (total + chunks - 1) / chunks;
        if (chunk == 0) chunk = 1;
#ifdef _OPENMP
#pragma omp parallel
        {
            Tally local;
            uint8_t T[kMaxSlots];
#pragma omp for schedule(dynamic)
            for (long long ci = 0; ci < chunks; ++ci) {
                unsigned long long lo = static_cast<unsigned long long>(ci) * chunk;
                if (lo >= total) continue;
                unsigned long long hi = std::min(total, lo + chunk);
                for (unsigned long long code = lo; code < hi; ++code) {
                    decode(ctx, first, code, T);
                    scan_one(ctx, T, local);
                }
            }
#pragma omp critical
            tally.absorb(local);
        }
#else
        uint8_t T[kMaxSlots];
        for (unsigned long long code = 0; code < total; ++code) {
            decode(ctx, first, code, T);
            scan_one(ctx, T, tally);
        }
#endif
    }
    CensusResult out;
    out.d = d;
    out.p = p;
    out.sigma2 = tally.sigma2;
    out.csigma2 = tally.csigma2;
    out.rank_one = tally.rank_one;
    out.concise_two = tally.concise_two;
    out.concise_three_plus = tally.concise_three_plus;
    out.saw_exactly_one = tally.saw_exactly_one;
    return out;
}

long long count_sigma2_points(int d, long long p, const CensusOptions& opts) {
    return census_scan(d, p, opts).sigma2;
}

long long count_csigma2_points(int d, long long p, const CensusOptions& opts) {
    return census_scan(d, p, opts).csigma2;
}

CensusComparison census_vs_motive(int d, long long p, const CensusOptions& opts) {
    CensusComparison cmp;
    cmp.census = census_scan(d, p, opts);
    cmp.sigma2_formula = sigma2_motive_formula(d).eval(p);
    cmp.csigma2_formula = csigma2_motive_formula(d).eval(p);
    cmp.sigma2_matches = cmp.census.sigma2 == cmp.sigma2_formula;
    cmp.csigma2_matches = cmp.census.csigma2 == cmp.csigma2_formula;
    return cmp;
}

} // namespace concise
