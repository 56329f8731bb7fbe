#include <doctest.h>

#include <cmath>
#include <random>

#include "periodica/periods.hpp"
#include "periodica/polygon.hpp"

using namespace periodica;

// Randomized curves with well-separated branch points (all gaps >= 0.1),
// fixed seed. Checks the invariants the structure theorems guarantee for
// every member of the family, not just the published fixtures.

namespace {

CurveParams random_curve(std::mt19937 &rng) {
    std::uniform_int_distribution<int> genus_dist(2, 6);
    std::uniform_real_distribution<double> gap_dist(0.1, 3.0);
    const int g = genus_dist(rng);
    std::vector<double> a;
    double prev = 1.0;
    for (int i = 1; i < g; ++i) {
        prev += gap_dist(rng);
        a.push_back(prev);
    }
    return validate_params(g, a);
}

} // namespace

TEST_CASE("structural invariants hold across random well-separated curves") {
    std::mt19937 rng(20240817);
    QuadratureConfig cfg;
    for (int trial = 0; trial < 25; ++trial) {
        const auto p = random_curve(rng);
        CAPTURE(trial);
        CAPTURE(p.genus);

        const auto lens = interval_lengths(p, cfg);
        for (double v : lens) CHECK(v > 0.0);
        CHECK(square_condition_residual(p, cfg) <= 1e-10);

        const auto ps = period_matrix(p, cfg);
        const double scale = std::max(1.0, norm_inf(ps.Y));
        CHECK(max_abs_diff(ps.Y, transpose(ps.Y)) <= 1e-8 * scale);
        LUDecomposition<double> lu(ps.Y);
        CHECK(std::abs(lu.det() - 1.0) <= 1e-8);

        const auto lay = rectangle_dims(p, cfg);
        CHECK((int)lay.rects.size() == 2 * p.genus - 1);
        CHECK((int)lay.identifications.size() == 2 * p.genus);
        for (int i = 1; i < p.genus; ++i) {
            const auto &pi = lay.rects[i];
            const auto &qi = lay.rects[p.genus + i - 1];
            CHECK(qi.w == pi.h);
            CHECK(qi.h == pi.w);
        }
    }
}

TEST_CASE("entry signs depend only on the column block and row parity") {
    std::mt19937 rng(7);
    QuadratureConfig cfg;
    for (int trial = 0; trial < 6; ++trial) {
        const auto p = random_curve(rng);
        const int half = (p.genus + 1) / 2;
        const Mat pi0 = build_Pi0(p, cfg);
        for (const auto &e : entry_table(p)) {
            const double v = pi0(e.j - 1, e.k - 1);
            const int expected = (e.k <= half && e.j % 2 == 0) ? -1 : 1;
            CAPTURE(p.genus);
            CAPTURE(e.j);
            CAPTURE(e.k);
            CHECK(v * expected > 0.0);
        }
    }
}
