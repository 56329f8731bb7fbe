#ifndef PERIODICA_DETAIL_QUAD_KERNELS_HPP
#define PERIODICA_DETAIL_QUAD_KERNELS_HPP

// Templated tanh-sinh kernels shared by the double and double-double paths.
// Integrands receive the distances to the two interval endpoints computed
// without cancellation; every branch-point factor of |f| is assembled as a
// sum of nonnegative terms, so clustered curves lose no digits here.

#include <cmath>
#include <type_traits>
#include <vector>

#include "periodica/curve.hpp"
#include "periodica/dd.hpp"
#include "periodica/quadrature.hpp"

namespace periodica::detail {

template <class S>
struct IntegralValue {
    S value{0.0};
    double abs_error_estimate = 0.0;
    long nodes = 0;
    bool converged = false;
};

inline double mul2(double x) { return 2.0 * x; }
inline DDouble mul2(const DDouble &x) { return mul_pwr2(x, 2.0); }
inline double half_of(double x) { return 0.5 * x; }
inline DDouble half_of(const DDouble &x) { return mul_pwr2(x, 0.5); }

template <class S>
inline S half_pi_of();
template <>
inline double half_pi_of<double>() {
    return 1.5707963267948966;
}
template <>
inline DDouble half_pi_of<DDouble>() {
    return dd_const::half_pi;
}

// Trapezoid sums of the tanh-sinh transform x = tanh((pi/2) sinh t) over
// levels h = 2^-level until two successive levels agree to tolerance.
// f(d_lo, d_hi) is the integrand with d_lo = z-lo, d_hi = hi-z; the node
// offsets half*(1 +- x) are produced from exp(-pi*sinh t) so the small one
// stays fully accurate. Summation order is fixed; a single thread owns one
// integral.
template <class S, class F>
IntegralValue<S> tanh_sinh_core(const F &f, const S &half_width, double target_rel_tol,
                                int max_level) {
    using std::abs;
    using std::cosh;
    using std::exp;
    using std::sinh;

    const double tmax = scalar_traits<S>::tanh_sinh_tmax;
    const double term_eps = scalar_traits<S>::eps;
    const S half_pi = half_pi_of<S>();

    IntegralValue<S> out;
    S prev_value(0.0);
    bool have_prev = false;

    for (int level = 0; level <= max_level; ++level) {
        const double h = std::ldexp(1.0, -level);
        S sum = half_pi * f(half_width, half_width); // t = 0 node, weight pi/2
        ++out.nodes;
        int small_run = 0;
        for (long k = 1;; ++k) {
            const double t = double(k) * h;
            if (t > tmax) break;
            S ts(t);
            S u = half_pi * sinh(ts);
            S em = exp(mul2(-u));
            S denom = S(1.0) + em;
            S one_minus = mul2(em) / denom; // 1 - x, exact near x = 1
            S one_plus = S(2.0) / denom;    // 1 + x
            if (to_double(one_minus) == 0.0) break;
            S w = half_pi * cosh(ts) * (one_minus * one_plus); // sech^2(u) folded in
            S term = w * (f(half_width * one_plus, half_width * one_minus) +
                          f(half_width * one_minus, half_width * one_plus));
            out.nodes += 2;
            sum += term;
            if (to_double(abs(term)) <= term_eps * std::abs(to_double(sum))) {
                if (++small_run >= 2) break;
            } else {
                small_run = 0;
            }
        }
        S value = half_width * (S(h) * sum);
        out.value = value;
        if (have_prev) {
            double err = std::abs(to_double(value - prev_value));
            out.abs_error_estimate = err;
            if (err <= target_rel_tol * std::max(std::abs(to_double(value)), 1.0)) {
                out.converged = true;
                return out;
            }
        }
        prev_value = value;
        have_prev = true;
    }
    return out;
}

// z^(j-1)/sqrt|f(z)| over a finite interval between consecutive branch points.
// Branch-point factors: |z - lo||hi - z| come straight from (d_lo, d_hi);
// every other root rho contributes d_lo + (lo - rho) or d_hi + (rho - hi),
// sums of nonnegative quantities.
template <class S>
struct EntryIntegrand {
    S lo{0.0};
    int power = 0; // j - 1
    std::vector<S> off_lo, off_hi;

    S operator()(const S &d_lo, const S &d_hi) const {
        using std::sqrt;
        S prod = d_lo * d_hi;
        for (const S &o : off_lo) prod *= d_lo + o;
        for (const S &o : off_hi) prod *= d_hi + o;
        S z = lo + d_lo;
        return pow_int(z, power) / sqrt(prod);
    }
};

template <class S>
EntryIntegrand<S> make_entry_integrand(const CurveParams &p, int j, int m) {
    const auto b = p.branch_points();
    EntryIntegrand<S> f;
    f.lo = S(b[m]);
    f.power = j - 1;
    const S lo(b[m]), hi(b[m + 1]);
    for (int i = 0; i < (int)b.size(); ++i) {
        const S r(b[i]);
        if (i < m) f.off_lo.push_back(lo - r);
        if (i > m + 1) f.off_hi.push_back(r - hi);
        if (b[i] != 0.0) f.off_lo.push_back(lo + r); // mirrored root -b[i]
    }
    return f;
}

// Calibration integrand: f replaced by z(1-z) on [0,1]; exact integral pi.
template <class S>
struct CalibrationIntegrand {
    S operator()(const S &d_lo, const S &d_hi) const {
        using std::sqrt;
        return S(1.0) / sqrt(d_lo * d_hi);
    }
};

// Tail after z = a/s^2: 2 a^(j-g-1/2) * integral_0^1 s^(2(g-j)) / sqrt(R) ds
// with R = prod_k ((1-s^4) + s^4 e_k), e_k = (a^2-b_k^2)/a^2 >= 0 and the
// a-root factor reducing to 1-s^4 itself. 1-s^4 is built from d_hi = 1-s.
template <class S>
struct TailIntegrand {
    int s_power = 0; // 2(g - j)
    std::vector<S> e;

    S operator()(const S &d_lo, const S &d_hi) const {
        using std::sqrt;
        const S &s = d_lo;
        S s2 = s * s;
        S s4 = s2 * s2;
        S d4 = d_hi * (S(1.0) + s) * (S(1.0) + s2);
        S prod = d4;
        for (const S &ek : e) prod *= d4 + s4 * ek;
        return pow_int(s, s_power) / sqrt(prod);
    }
};

template <class S>
IntegralValue<S> tail_integral_raw(const CurveParams &p, int j, const QuadratureConfig &cfg) {
    using std::sqrt;
    const auto b = p.branch_points();
    const int g = p.genus;
    const S a(b[g]);
    TailIntegrand<S> f;
    f.s_power = 2 * (g - j);
    const S a2 = a * a;
    for (int k = 1; k < g; ++k) {
        const S bk(b[k]);
        f.e.push_back((a - bk) * (a + bk) / a2);
    }
    auto r = tanh_sinh_core(f, S(0.5), cfg.target_rel_tol, cfg.max_level);
    S pref = mul2(pow_int(a, j - g) / sqrt(a));
    r.value = r.value * pref;
    r.abs_error_estimate *= to_double(pref);
    return r;
}

// Unsigned integral over interval m (finite m < g via tanh-sinh, m = g via
// the tail substitution). The oracle replaces the double path when asked.
template <class S>
IntegralValue<S> interval_integral(const CurveParams &p, int j, int m,
                                   const QuadratureConfig &cfg) {
    if constexpr (std::is_same_v<S, double>) {
        if (cfg.oracle_mode) {
            IntegralResult r = m == p.genus ? oracle_tail(p, j) : oracle_interval(p, j, m);
            return IntegralValue<double>{r.value, r.abs_error_estimate, r.nodes_used, r.converged};
        }
    }
    if (m == p.genus) return tail_integral_raw<S>(p, j, cfg);
    const auto b = p.branch_points();
    const S half = half_of(S(b[m + 1]) - S(b[m]));
    auto f = make_entry_integrand<S>(p, j, m);
    return tanh_sinh_core(f, half, cfg.target_rel_tol, cfg.max_level);
}

} // namespace periodica::detail

#endif // PERIODICA_DETAIL_QUAD_KERNELS_HPP
