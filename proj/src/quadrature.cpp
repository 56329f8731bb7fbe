#include "periodica/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "periodica/detail/quad_kernels.hpp"

namespace periodica {

const char *precision_name(Precision p) {
    return p == Precision::standard ? "standard" : "extended";
}

Precision precision_from_name(const std::string &name) {
    if (name == "standard") return Precision::standard;
    if (name == "extended") return Precision::extended;
    throw validation_error("unknown precision '" + name + "' (standard|extended)");
}

void validate_config(const QuadratureConfig &cfg) {
    if (!(cfg.target_rel_tol > 0.0)) throw validation_error("target_rel_tol must be > 0");
    if (cfg.max_level < 3) throw validation_error("max_level must be >= 3");
    if (cfg.oracle_mode && cfg.precision == Precision::extended)
        throw validation_error("oracle_mode is a standard-precision scheme");
}

// ---- Gauss-Kronrod 15 oracle -------------------------------------------------

namespace {

// QUADPACK dqk15 abscissae/weights on [-1,1]
constexpr double kXgk[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                            0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                            0.2077849550078985, 0.0};
constexpr double kWgk[8] = {0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
                            0.14065325971552591, 0.16900472663926790, 0.19035057806478540,
                            0.20443294007529889, 0.20948214108472782};
constexpr double kWg[4] = {0.12948496616886969, 0.27970539148927666, 0.38183005050511894,
                           0.41795918367346938};

struct Segment {
    double a, b, value, error;
};

template <class F>
Segment gk15_segment(const F &f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double fc = f(mid);
    double k = kWgk[7] * fc;
    double g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = hw * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        k += kWgk[i] * fsum;
        if (i % 2 == 1) g += kWg[i / 2] * fsum;
    }
    return {a, b, k * hw, std::abs((k - g) * hw)};
}

template <class F>
IntegralResult gk_adaptive(const F &f, double a, double b, double tol) {
    constexpr int kMaxSegments = 20000;
    IntegralResult out;
    std::vector<Segment> segs{gk15_segment(f, a, b)};
    out.nodes_used = 15;
    const double scale = std::max(1.0, std::abs(segs[0].value));
    for (int round = 0; round < kMaxSegments; ++round) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        out.value = total;
        out.abs_error_estimate = err;
        if (err <= tol * scale) {
            out.converged = true;
            return out;
        }
        Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        segs[worst] = gk15_segment(f, s.a, mid);
        segs.push_back(gk15_segment(f, mid, s.b));
        out.nodes_used += 30;
    }
    return out;
}

constexpr double kPi2 = 1.5707963267948966;

// roots of f other than the endpoints of interval m, as signed values
std::vector<double> other_roots(const CurveParams &p, int m) {
    auto b = p.branch_points();
    std::vector<double> r;
    for (int i = 0; i < (int)b.size(); ++i) {
        if (i != m && i != m + 1) r.push_back(b[i]);
        if (b[i] != 0.0) r.push_back(-b[i]);
    }
    return r;
}

} // namespace

IntegralResult oracle_interval(const CurveParams &p, int j, int m, double tol) {
    if (j < 1 || j > p.genus) throw validation_error("power index j out of range");
    if (m < 0 || m >= p.genus) throw validation_error("oracle_interval needs a finite interval");
    auto b = p.branch_points();
    const double lo = b[m], hi = b[m + 1];
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    const auto rest = other_roots(p, m);
    // z = mid + hw sin(theta) turns the endpoint factors into hw^2 cos^2,
    // cancelling the Jacobian: the theta-integrand is analytic.
    auto f = [&](double theta) {
        const double z = mid + hw * std::sin(theta);
        double prod = 1.0;
        for (double r : rest) prod *= std::abs(z - r);
        return pow_int(z, j - 1) / std::sqrt(prod);
    };
    return gk_adaptive(f, -kPi2, kPi2, tol);
}

IntegralResult oracle_tail(const CurveParams &p, int j, double tol) {
    if (j < 1 || j > p.genus) throw validation_error("power index j out of range");
    const int g = p.genus;
    auto b = p.branch_points();
    const double a = b[g];
    // s-substituted tail integrand is singular at s=1 only; with
    // s = (1+sin theta)/2 the substitution factor collapses to sqrt(s).
    auto f = [&](double theta) {
        const double s = 0.5 * (1.0 + std::sin(theta));
        const double s4 = s * s * s * s;
        double q = (1.0 + s) * (1.0 + s * s);
        for (int k = 1; k < g; ++k) {
            const double c = b[k] / a;
            q *= 1.0 - c * c * s4;
        }
        return pow_int(s, 2 * (g - j)) * std::sqrt(s / q);
    };
    IntegralResult r = gk_adaptive(f, -kPi2, kPi2, tol);
    const double pref = 2.0 * pow_int(a, j - g) / std::sqrt(a);
    r.value *= pref;
    r.abs_error_estimate *= pref;
    return r;
}

IntegralResult gk_integrate(const std::function<double(double)> &f, double a, double b,
                            double tol) {
    return gk_adaptive(f, a, b, tol);
}

// ---- public wrappers --------------------------------------------------------

namespace {

IntegralResult narrow(const detail::IntegralValue<DDouble> &v) {
    return {to_double(v.value), v.abs_error_estimate, v.nodes, v.converged};
}

IntegralResult narrow(const detail::IntegralValue<double> &v) {
    return {v.value, v.abs_error_estimate, v.nodes, v.converged};
}

IntegralResult dispatch_interval(const CurveParams &p, int j, int m,
                                 const QuadratureConfig &cfg) {
    if (cfg.precision == Precision::extended)
        return narrow(detail::interval_integral<DDouble>(p, j, m, cfg));
    return narrow(detail::interval_integral<double>(p, j, m, cfg));
}

} // namespace

IntegralResult integrate_endpoint_singular(const CurveParams &p, int j, double lo, double hi,
                                           const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (j < 1 || j > p.genus) throw validation_error("power index j out of range");
    auto b = p.branch_points();
    int m = -1;
    for (int i = 0; i + 1 < (int)b.size(); ++i)
        if (b[i] == lo && b[i + 1] == hi) m = i;
    if (m < 0) {
        std::ostringstream os;
        os << "[" << lo << ", " << hi << "] is not an interval between consecutive branch points";
        throw validation_error(os.str());
    }
    return dispatch_interval(p, j, m, cfg);
}

IntegralResult tail_integral(const CurveParams &p, int j, const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (j < 1 || j > p.genus) throw validation_error("power index j out of range");
    return dispatch_interval(p, j, p.genus, cfg);
}

double entry_value(const CurveParams &p, const EntrySpec &e, const QuadratureConfig &cfg) {
    validate_config(cfg);
    IntegralResult r = dispatch_interval(p, e.j, e.m, cfg);
    if (!r.converged) {
        std::ostringstream os;
        os << "entry (" << e.j << "," << e.k << ") did not converge at max_level "
           << cfg.max_level;
        throw convergence_error(os.str());
    }
    return e.sign * r.value;
}

IntegralResult calibration_pi(const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (cfg.precision == Precision::extended) {
        auto r = detail::tanh_sinh_core(detail::CalibrationIntegrand<DDouble>{}, DDouble(0.5),
                                        cfg.target_rel_tol, cfg.max_level);
        return narrow(r);
    }
    auto r = detail::tanh_sinh_core(detail::CalibrationIntegrand<double>{}, 0.5,
                                    cfg.target_rel_tol, cfg.max_level);
    return narrow(r);
}

} // namespace periodica
