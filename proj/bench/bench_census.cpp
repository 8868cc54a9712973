// Benchmark: OpenMP census scan against the serial reference.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "concise/census.hpp"

using namespace concise;

namespace {

template <class F>
double timed(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    int d = argc > 1 ? std::atoi(argv[1]) : 4;
    long long p = argc > 2 ? std::atoll(argv[2]) : 3;
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("census benchmark: d=%d p=%lld (%d threads)\n", d, p, threads);

    CensusResult serial_result{}, parallel_result{};
    double serial_s = timed([&] { serial_result = census_scan_serial(d, p); });
    std::printf("  serial   %8.3fs  sigma2=%lld csigma2=%lld\n", serial_s, serial_result.sigma2,
                serial_result.csigma2);
    double parallel_s = timed([&] { parallel_result = census_scan(d, p); });
    std::printf("  parallel %8.3fs  sigma2=%lld csigma2=%lld\n", parallel_s, parallel_result.sigma2,
                parallel_result.csigma2);
    bool agree = serial_result.sigma2 == parallel_result.sigma2 &&
                 serial_result.csigma2 == parallel_result.csigma2;
    std::printf("  agreement: %s   speedup: %.2fx\n", agree ? "yes" : "NO",
                parallel_s > 0 ? serial_s / parallel_s : 0.0);
    return agree ? 0 : 1;
}
