// Timing comparison of the serial Pi0 kernel against the OpenMP-parallel one.
// Run manually: build/bench_pi0 [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "periodica/periods.hpp"

using namespace periodica;

namespace {

double time_once(const CurveParams &p, const QuadratureConfig &cfg, bool parallel) {
    const auto t0 = std::chrono::steady_clock::now();
    const Mat pi0 = parallel ? build_Pi0(p, cfg) : build_Pi0_serial(p, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    (void)pi0;
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char **argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled\n");
#endif
    std::printf("%-28s %6s %12s %12s %9s\n", "curve", "g^2", "serial [s]", "parallel [s]",
                "speedup");

    struct Case {
        int genus;
        std::vector<double> a;
        Precision precision;
    };
    const std::vector<Case> cases = {
        {4, {2, 3, 4}, Precision::standard},
        {6, {1.5, 2, 3, 4, 5}, Precision::standard},
        {8, {1.5, 2, 2.5, 3, 3.5, 4, 4.5}, Precision::standard},
        {10, {1.2, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5}, Precision::standard},
        {6, {1.5, 2, 3, 4, 5}, Precision::extended},
        {10, {1.2, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5}, Precision::extended},
    };

    for (const auto &c : cases) {
        QuadratureConfig cfg;
        cfg.precision = c.precision;
        if (c.precision == Precision::extended) cfg.target_rel_tol = 1e-25;
        const auto p = validate_params(c.genus, c.a);
        // verify the kernels agree bit-for-bit before timing
        const Mat a = build_Pi0_serial(p, cfg);
        const Mat b = build_Pi0(p, cfg);
        if (max_abs_diff(a, b) != 0.0) {
            std::fprintf(stderr, "serial and parallel kernels disagree for g=%d\n", c.genus);
            return 1;
        }
        double ts = 1e300, tp = 1e300;
        for (int r = 0; r < repeats; ++r) {
            ts = std::min(ts, time_once(p, cfg, false));
            tp = std::min(tp, time_once(p, cfg, true));
        }
        char label[64];
        std::snprintf(label, sizeof label, "g=%d, %s", c.genus, precision_name(c.precision));
        std::printf("%-28s %6d %12.4f %12.4f %8.2fx\n", label, c.genus * c.genus, ts, tp,
                    ts / tp);
    }
    return 0;
}
