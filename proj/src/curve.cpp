#include "periodica/curve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace periodica {

std::vector<double> CurveParams::branch_points() const {
    std::vector<double> b;
    b.reserve(genus + 1);
    b.push_back(0.0);
    b.push_back(1.0);
    b.insert(b.end(), a.begin(), a.end());
    return b;
}

CurveParams validate_params(int genus, const std::vector<double> &a) {
    if (genus < 2) throw validation_error("genus must be >= 2, got " + std::to_string(genus));
    if ((int)a.size() != genus - 1) {
        std::ostringstream os;
        os << "expected " << genus - 1 << " branch parameters for genus " << genus << ", got "
           << a.size();
        throw validation_error(os.str());
    }
    double prev = 1.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i])) throw validation_error("branch parameters must be finite");
        if (a[i] <= 1.0) {
            std::ostringstream os;
            os << "a" << i + 1 << " = " << a[i] << " <= 1";
            throw validation_error(os.str());
        }
        if (a[i] <= prev) {
            std::ostringstream os;
            os << "branch parameters not strictly increasing at a" << i + 1;
            throw validation_error(os.str());
        }
        min_gap = std::min(min_gap, a[i] - prev);
        prev = a[i];
    }

    CurveParams p;
    p.genus = genus;
    p.a = a;
    p.min_gap = min_gap;
    p.clustered = min_gap < 1e-3;
    return p;
}

double f_eval(const CurveParams &p, double z) {
    double v = z * (z * z - 1.0);
    for (double ak : p.a) v *= z * z - ak * ak;
    return v;
}

IntervalSpec interval_spec(const CurveParams &p, int m) {
    if (m < 0 || m > p.genus) throw validation_error("interval index out of range");
    auto b = p.branch_points();
    IntervalSpec s;
    s.m = m;
    s.lo = b[m];
    if (m == p.genus) {
        s.hi = std::numeric_limits<double>::infinity();
        s.improper = true;
    } else {
        s.hi = b[m + 1];
    }
    return s;
}

int entry_interval(int genus, int k) {
    int half = (genus + 1) / 2;
    return k <= half ? genus - 2 * k + 1 : 2 * k - genus - 2;
}

std::vector<EntrySpec> entry_table(const CurveParams &p) {
    const int g = p.genus;
    const int half = (g + 1) / 2;
    std::vector<EntrySpec> t;
    t.reserve(g * g);
    for (int j = 1; j <= g; ++j) {
        for (int k = 1; k <= g; ++k) {
            EntrySpec e;
            e.j = j;
            e.k = k;
            e.m = entry_interval(g, k);
            e.sign = (k <= half && j % 2 == 0) ? -1 : 1;
            t.push_back(e);
        }
    }
    return t;
}

} // namespace periodica
