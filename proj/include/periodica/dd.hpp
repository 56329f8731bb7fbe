#ifndef PERIODICA_DD_HPP
#define PERIODICA_DD_HPP

// Double-double scalar: an unevaluated sum of two doubles giving ~32 decimal
// digits. Classic error-free transformations (Dekker, Knuth; same algorithms
// as the QD library). Only the operations the quadrature and linear algebra
// need are provided. Requires round-to-nearest and no -ffast-math.

#include <cmath>
#include <cstdint>
#include <limits>

namespace periodica {

namespace eft {

inline double two_sum(double a, double b, double &err) {
    double s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

// assumes |a| >= |b|
inline double quick_two_sum(double a, double b, double &err) {
    double s = a + b;
    err = b - (s - a);
    return s;
}

inline double two_prod(double a, double b, double &err) {
    double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

} // namespace eft

struct DDouble {
    double hi{0.0};
    double lo{0.0};

    constexpr DDouble() = default;
    constexpr DDouble(double h) : hi(h), lo(0.0) {}
    constexpr DDouble(double h, double l) : hi(h), lo(l) {}
    constexpr DDouble(int v) : hi(double(v)), lo(0.0) {}

    static DDouble renorm(double h, double l) {
        double e;
        double s = eft::quick_two_sum(h, l, e);
        return DDouble(s, e);
    }

    bool is_zero() const { return hi == 0.0; }
    bool is_negative() const { return hi < 0.0; }
};

inline double to_double(const DDouble &a) { return a.hi; }
inline double to_double(double a) { return a; }

// ---- addition / subtraction -------------------------------------------------

inline DDouble operator+(const DDouble &a, const DDouble &b) {
    double e1, e2;
    double s1 = eft::two_sum(a.hi, b.hi, e1);
    double s2 = eft::two_sum(a.lo, b.lo, e2);
    e1 += s2;
    s1 = eft::quick_two_sum(s1, e1, e1);
    e1 += e2;
    return DDouble::renorm(s1, e1);
}

inline DDouble operator+(const DDouble &a, double b) {
    double e;
    double s = eft::two_sum(a.hi, b, e);
    e += a.lo;
    return DDouble::renorm(s, e);
}

inline DDouble operator+(double a, const DDouble &b) { return b + a; }

inline DDouble operator-(const DDouble &a) { return DDouble(-a.hi, -a.lo); }

inline DDouble operator-(const DDouble &a, const DDouble &b) { return a + (-b); }
inline DDouble operator-(const DDouble &a, double b) { return a + (-b); }
inline DDouble operator-(double a, const DDouble &b) { return (-b) + a; }

// ---- multiplication / division ----------------------------------------------

inline DDouble operator*(const DDouble &a, const DDouble &b) {
    double e;
    double p = eft::two_prod(a.hi, b.hi, e);
    e += a.hi * b.lo + a.lo * b.hi;
    return DDouble::renorm(p, e);
}

inline DDouble operator*(const DDouble &a, double b) {
    double e;
    double p = eft::two_prod(a.hi, b, e);
    e += a.lo * b;
    return DDouble::renorm(p, e);
}

inline DDouble operator*(double a, const DDouble &b) { return b * a; }

// exact scaling by a power of two
inline DDouble mul_pwr2(const DDouble &a, double p) { return DDouble(a.hi * p, a.lo * p); }

inline DDouble operator/(const DDouble &a, const DDouble &b) {
    double q1 = a.hi / b.hi;
    DDouble r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    double e;
    double s = eft::quick_two_sum(q1, q2, e);
    return DDouble::renorm(s, e) + q3;
}

inline DDouble operator/(const DDouble &a, double b) { return a / DDouble(b); }
inline DDouble operator/(double a, const DDouble &b) { return DDouble(a) / b; }

inline DDouble &operator+=(DDouble &a, const DDouble &b) { return a = a + b; }
inline DDouble &operator-=(DDouble &a, const DDouble &b) { return a = a - b; }
inline DDouble &operator*=(DDouble &a, const DDouble &b) { return a = a * b; }
inline DDouble &operator/=(DDouble &a, const DDouble &b) { return a = a / b; }

// ---- comparisons --------------------------------------------------------------

inline bool operator==(const DDouble &a, const DDouble &b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DDouble &a, const DDouble &b) { return !(a == b); }
inline bool operator<(const DDouble &a, const DDouble &b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DDouble &a, const DDouble &b) { return b < a; }
inline bool operator<=(const DDouble &a, const DDouble &b) { return !(b < a); }
inline bool operator>=(const DDouble &a, const DDouble &b) { return !(a < b); }

inline bool operator<(const DDouble &a, double b) { return a < DDouble(b); }
inline bool operator>(const DDouble &a, double b) { return a > DDouble(b); }
inline bool operator<=(const DDouble &a, double b) { return a <= DDouble(b); }
inline bool operator>=(const DDouble &a, double b) { return a >= DDouble(b); }

// ---- elementary functions -------------------------------------------------

inline DDouble abs(const DDouble &a) { return a.hi < 0.0 ? -a : a; }

inline bool isfinite(const DDouble &a) { return std::isfinite(a.hi); }

namespace dd_const {
inline constexpr DDouble pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DDouble half_pi{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr DDouble ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr double eps = 4.93038065763132e-32; // 2^-104
} // namespace dd_const

inline DDouble ldexp(const DDouble &a, int n) {
    return DDouble(std::ldexp(a.hi, n), std::ldexp(a.lo, n));
}

inline DDouble sqr(const DDouble &a) {
    double e;
    double p = eft::two_prod(a.hi, a.hi, e);
    e += 2.0 * a.hi * a.lo;
    return DDouble::renorm(p, e);
}

inline DDouble sqrt(const DDouble &a) {
    // Karp's trick: one correction step on a double seed gives full precision.
    if (a.is_zero()) return DDouble(0.0);
    if (a.is_negative()) return DDouble(std::numeric_limits<double>::quiet_NaN());
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    double e;
    double s = eft::two_sum(ax, (a - sqr(DDouble(ax))).hi * (x * 0.5), e);
    return DDouble::renorm(s, e);
}

inline DDouble exp(const DDouble &a) {
    // exp(r * 2^9)^(2^-9) with |r| <= ln2/1024 handled by a short Taylor sum.
    static const DDouble inv_fact[] = {
        {1.66666666666666657e-01, 9.25185853854297066e-18},  // 1/3!
        {4.16666666666666644e-02, 2.31296463463574266e-18},  // 1/4!
        {8.33333333333333322e-03, 1.15648231731787138e-19},  // 1/5!
        {1.38888888888888894e-03, -5.30054395437357706e-20}, // 1/6!
        {1.98412698412698413e-04, 1.72095582934207053e-22},  // 1/7!
        {2.48015873015873016e-05, 2.15119478667758816e-23},  // 1/8!
        {2.75573192239858925e-06, -1.85839327404647208e-22}, // 1/9!
        {2.75573192239858883e-07, 2.37677146222502973e-23},  // 1/10!
        {2.50521083854417202e-08, -1.44881407093591197e-24}, // 1/11!
        {2.08767569878681002e-09, -1.20734505911325997e-25}, // 1/12!
    };
    const double k = 512.0;
    const double inv_k = 1.0 / k;

    if (a.hi <= -709.0) return DDouble(0.0);
    if (a.hi >= 709.0) return DDouble(std::numeric_limits<double>::infinity());
    if (a.is_zero()) return DDouble(1.0);

    double m = std::floor(a.hi / dd_const::ln2.hi + 0.5);
    DDouble r = mul_pwr2(a - dd_const::ln2 * m, inv_k);

    DDouble p = sqr(r);
    DDouble s = r + mul_pwr2(p, 0.5);
    p = p * r;
    DDouble t = p * inv_fact[0];
    std::size_t i = 0;
    do {
        s += t;
        p = p * r;
        ++i;
        t = p * inv_fact[i];
    } while (std::abs(t.hi) > inv_k * dd_const::eps && i < 9);
    s += t;

    for (int j = 0; j < 9; ++j) s = mul_pwr2(s, 2.0) + sqr(s);
    s += 1.0;
    return ldexp(s, int(m));
}

inline DDouble cosh(const DDouble &a) {
    if (a.is_zero()) return DDouble(1.0);
    DDouble ea = exp(a);
    return mul_pwr2(ea + 1.0 / ea, 0.5);
}

inline DDouble sinh(const DDouble &a) {
    if (a.is_zero()) return DDouble(0.0);
    if (std::abs(a.hi) > 0.05) {
        DDouble ea = exp(a);
        return mul_pwr2(ea - 1.0 / ea, 0.5);
    }
    // near zero exp(a)-exp(-a) cancels; sum the odd Taylor series instead
    DDouble s = a, t = a;
    DDouble r = sqr(a);
    double m = 1.0;
    double thresh = std::abs(a.hi) * dd_const::eps;
    do {
        m += 2.0;
        t = t * r;
        t = t / ((m - 1.0) * m);
        s += t;
    } while (std::abs(t.hi) > thresh);
    return s;
}

// ---- scalar traits shared by the templated kernels --------------------------

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr double eps = std::numeric_limits<double>::epsilon();
    // trapezoid truncation point for tanh-sinh with x^(-1/2) endpoints
    static constexpr double tanh_sinh_tmax = 4.3;
    static const char *name() { return "standard"; }
};

template <>
struct scalar_traits<DDouble> {
    static constexpr double eps = dd_const::eps;
    static constexpr double tanh_sinh_tmax = 5.5;
    static const char *name() { return "extended"; }
};

template <class S>
inline S pow_int(S base, int n) {
    if (n < 0) return S(1.0) / pow_int(base, -n);
    S r(1.0);
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

} // namespace periodica

#endif // PERIODICA_DD_HPP
