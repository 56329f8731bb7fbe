#include <doctest.h>

#include <cmath>
#include <set>

#include "periodica/curve.hpp"

using namespace periodica;

TEST_CASE("validate_params accepts the family and flags clustering") {
    auto p = validate_params(2, {2.0});
    CHECK(p.genus == 2);
    CHECK(p.a == std::vector<double>{2.0});
    CHECK_FALSE(p.clustered);

    auto p4 = validate_params(4, {2.0, 3.0, 4.0});
    CHECK_FALSE(p4.clustered);
    CHECK(p4.min_gap == 1.0);

    auto pc = validate_params(2, {1.0001});
    CHECK(pc.clustered);
}

TEST_CASE("validate_params rejections") {
    CHECK_THROWS_AS(validate_params(1, {}), validation_error);
    CHECK_THROWS_AS(validate_params(2, {0.5}), validation_error);
    CHECK_THROWS_WITH_AS(validate_params(2, {0.5}), doctest::Contains("<= 1"), validation_error);
    CHECK_THROWS_AS(validate_params(3, {2.0}), validation_error);          // wrong length
    CHECK_THROWS_AS(validate_params(3, {3.0, 2.0}), validation_error);     // not increasing
    CHECK_THROWS_AS(validate_params(3, {2.0, 2.0}), validation_error);     // not strict
    CHECK_THROWS_AS(validate_params(2, {std::nan("")}), validation_error); // non-finite
    CHECK_THROWS_AS(validate_params(2, {1.0}), validation_error);          // a1 == 1
}

TEST_CASE("f_eval") {
    auto p = validate_params(2, {2.0});
    CHECK(f_eval(p, 0.0) == 0.0);
    CHECK(f_eval(p, 1.0) == 0.0);
    CHECK(f_eval(p, 0.5) == 1.40625); // 0.5 * (0.25-1) * (0.25-4), exact in binary
    CHECK(f_eval(p, 2.0) == 0.0);
}

TEST_CASE("f changes sign at each branch point") {
    for (const auto &gc : std::vector<std::pair<int, std::vector<double>>>{
             {2, {2.0}}, {3, {2.0, 3.0}}, {5, {1.5, 2.0, 3.0, 4.0}}}) {
        const int g = gc.first;
        const auto &a = gc.second;
        auto p = validate_params(g, a);
        auto b = p.branch_points();
        int prev = 0;
        for (int m = 0; m < g; ++m) {
            double mid = 0.5 * (b[m] + b[m + 1]);
            int s = f_eval(p, mid) > 0 ? 1 : -1;
            if (m > 0) CHECK(s == -prev);
            prev = s;
        }
        // beyond the last branch point f > 0
        CHECK(f_eval(p, b.back() + 1.0) > 0.0);
        CHECK(prev == -1); // on (a_{g-2}, a_{g-1}) the sign is negative
    }
}

TEST_CASE("interval_spec endpoints") {
    auto p = validate_params(3, {2.0, 3.0});
    auto s0 = interval_spec(p, 0);
    CHECK(s0.lo == 0.0);
    CHECK(s0.hi == 1.0);
    CHECK_FALSE(s0.improper);
    auto s3 = interval_spec(p, 3);
    CHECK(s3.lo == 3.0);
    CHECK(std::isinf(s3.hi));
    CHECK(s3.improper);
    CHECK_THROWS_AS(interval_spec(p, 4), validation_error);
}

TEST_CASE("entry_table column intervals match the worked examples") {
    auto p4 = validate_params(4, {2.0, 3.0, 4.0});
    std::vector<int> m4;
    for (int k = 1; k <= 4; ++k) m4.push_back(entry_interval(4, k));
    CHECK(m4 == std::vector<int>{3, 1, 0, 2});

    std::vector<int> m3;
    for (int k = 1; k <= 3; ++k) m3.push_back(entry_interval(3, k));
    CHECK(m3 == std::vector<int>{2, 0, 1});

    auto p3 = validate_params(3, {2.0, 3.0});
    auto t3 = entry_table(p3);
    auto at = [&](int j, int k) { return t3[(j - 1) * 3 + (k - 1)]; };
    CHECK(at(2, 1).sign == -1);
    CHECK(at(2, 2).sign == -1);
    CHECK(at(2, 3).sign == +1);

    auto t2 = entry_table(validate_params(2, {2.0}));
    CHECK(t2[0].m == 1);
    CHECK(t2[0].sign == +1);
}

TEST_CASE("k -> m(k) is a bijection onto 0..g-1 for g = 2..12") {
    for (int g = 2; g <= 12; ++g) {
        std::set<int> seen;
        for (int k = 1; k <= g; ++k) {
            int m = entry_interval(g, k);
            CHECK(m >= 0);
            CHECK(m < g);
            seen.insert(m);
        }
        CHECK((int)seen.size() == g);
    }
}

namespace {

// literal transcription of the four-case definitions, one block per parity,
// used as the oracle for the unified rule
struct LiteralEntry {
    int m;
    int sign;
};

LiteralEntry literal_entry(int g, int j, int k) {
    // interval [a_{lo_idx}, a_{lo_idx+1}] in the a_{-1}=0, a_0=1 numbering
    // maps to m = lo_idx + 1
    auto seg = [](int lo_idx) { return lo_idx + 1; };
    if (g % 2 == 0) {
        if (k <= g / 2 - 1) return {seg(g - 2 * k), (j % 2 == 0) ? -1 : 1};
        if (k == g / 2) return {seg(0), (j % 2 == 0) ? -1 : 1};     // [1, a_1]
        if (k == g / 2 + 1) return {seg(-1), 1};                    // [0, 1]
        return {seg(2 * k - g - 3), 1};
    }
    if (k <= (g - 1) / 2) return {seg(g - 2 * k), (j % 2 == 0) ? -1 : 1};
    if (k == (g + 1) / 2) return {seg(-1), (j % 2 == 0) ? -1 : 1}; // [0, 1]
    if (k == (g + 3) / 2) return {seg(0), 1};                      // [1, a_1]
    return {seg(2 * k - g - 3), 1};
}

} // namespace

TEST_CASE("unified rule reproduces the literal four-case definition, g = 2..12") {
    for (int g = 2; g <= 12; ++g) {
        std::vector<double> a;
        for (int i = 1; i < g; ++i) a.push_back(1.0 + i);
        auto p = validate_params(g, a);
        auto table = entry_table(p);
        for (const auto &e : table) {
            auto lit = literal_entry(g, e.j, e.k);
            CAPTURE(g);
            CAPTURE(e.j);
            CAPTURE(e.k);
            CHECK(e.m == lit.m);
            CHECK(e.sign == lit.sign);
        }
    }
}
