#include "periodica/periods.hpp"

#include <cmath>
#include <sstream>

#include "periodica/detail/quad_kernels.hpp"
#include "periodica/polygon.hpp"

namespace periodica {

ResidualGates ResidualGates::defaults(Precision p) {
    if (p == Precision::extended) return {1e-20, 1e-20, 1e-20, 1e-20};
    return {1e-8, 1e-8, 1e-10, 1e-8};
}

std::vector<std::string> failed_gates(const ResidualReport &r, const ResidualGates &g) {
    std::vector<std::string> out;
    if (r.symmetry > g.tol_sym) out.push_back("symmetry");
    if (r.det_minus_one > g.tol_det) out.push_back("determinant");
    if (!r.cholesky_ok) out.push_back("cholesky");
    if (r.square_condition > g.tol_square) out.push_back("square_condition");
    if (r.closed_form_delta && *r.closed_form_delta > g.tol_closed) out.push_back("closed_form");
    if (r.lemma_consistency > g.tol_sym) out.push_back("lemma_consistency");
    return out;
}

MatI build_M(int genus) {
    if (genus < 2) throw validation_error("genus must be >= 2");
    MatI m(genus, genus);
    for (int j = 0; j < genus; ++j) m(j, j) = (j % 2 == 0) ? 1 : -1;
    return m;
}

MatI build_N(int genus) {
    if (genus < 2) throw validation_error("genus must be >= 2");
    MatI n(genus, genus);
    for (int j = 1; j <= genus; ++j)
        for (int k = 1; k <= genus; ++k)
            if (j + k <= genus + 1) n(j - 1, k - 1) = ((genus + 1 - j - k) % 2 == 0) ? 1 : -1;
    return n;
}

GammaCoeffs gamma_coeffs(int genus) {
    if (genus < 2) throw validation_error("genus must be >= 2");
    MatI t(genus, genus);
    for (int k = 0; k < genus; ++k)
        for (int j = 0; j <= k; ++j) t(k, j) = ((k - j) % 2 == 0) ? 1 : -1;
    return {t};
}

namespace {

inline double mul2_local(double x) { return 2.0 * x; }
inline DDouble mul2_local(const DDouble &x) { return mul_pwr2(x, 2.0); }
inline double half_local(double x) { return 0.5 * x; }
inline DDouble half_local(const DDouble &x) { return mul_pwr2(x, 0.5); }

template <class S>
Matrix<S> build_pi0_impl(const CurveParams &p, const QuadratureConfig &cfg, bool parallel,
                         long *nodes_out) {
    const int g = p.genus;
    const auto entries = entry_table(p);
    std::vector<detail::IntegralValue<S>> results(entries.size());
    // one thread per integral, outputs to distinct slots: bit-identical for
    // any thread count
#pragma omp parallel for schedule(static) if (parallel)
    for (int idx = 0; idx < (int)entries.size(); ++idx) {
        const auto &e = entries[idx];
        results[idx] = detail::interval_integral<S>(p, e.j, e.m, cfg);
    }
    long nodes = 0;
    Matrix<S> pi0(g, g);
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        const auto &e = entries[idx];
        if (!results[idx].converged) {
            std::ostringstream os;
            os << "Pi0 entry (" << e.j << "," << e.k << ") did not converge at max_level "
               << cfg.max_level;
            throw convergence_error(os.str());
        }
        pi0(e.j - 1, e.k - 1) = S(double(e.sign)) * results[idx].value;
        nodes += results[idx].nodes;
    }
    if (nodes_out) *nodes_out = nodes;
    return pi0;
}

// rhs = M Pi0 N with M = diag((-1)^(j-1))
template <class S>
Matrix<S> m_pi0_n(const Matrix<S> &pi0, const MatI &n) {
    const int g = pi0.rows();
    Matrix<S> rhs(g, g);
    for (int i = 0; i < g; ++i) {
        const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
        for (int j = 0; j < g; ++j) {
            const S w = S(sgn) * pi0(i, j);
            for (int k = 0; k < g; ++k)
                if (n(j, k) != 0) rhs(i, k) += w * S(double(n(j, k)));
        }
    }
    return rhs;
}

// B/(2i) = M Pi0 J with J the antidiagonal flip
template <class S>
Matrix<S> m_pi0_j(const Matrix<S> &pi0) {
    const int g = pi0.rows();
    Matrix<S> b(g, g);
    for (int i = 0; i < g; ++i) {
        const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k < g; ++k) b(i, k) = S(sgn) * pi0(i, g - 1 - k);
    }
    return b;
}

template <class S>
void period_pipeline(const CurveParams &p, const QuadratureConfig &cfg, Matrix<S> &pi0,
                     Matrix<S> &y, long &nodes) {
    pi0 = build_pi0_impl<S>(p, cfg, true, &nodes);
    const MatI n = build_N(p.genus);
    Matrix<S> rhs = m_pi0_n(pi0, n);
    LUDecomposition<S> lu(pi0);
    if (lu.singular || condition_estimate(pi0, lu) > 1.0 / scalar_traits<S>::eps)
        throw numerical_error("Pi0 numerically singular at this precision; escalate precision");
    y = lu.solve(rhs);
}

template <class S>
Matrix<S> closed_form_from_pi0(const Matrix<S> &pi0) {
    using std::abs;
    const S p = pi0(0, 0), q = pi0(0, 1), r = pi0(1, 0), s = pi0(1, 1);
    const S ps = p * s, qr = q * r, pr = p * r;
    const S den = ps - qr;
    const double floor =
        scalar_traits<S>::eps * (std::abs(to_double(ps)) + std::abs(to_double(qr)));
    if (std::abs(to_double(den)) <= floor)
        throw numerical_error("ps - qr below the precision floor");
    Matrix<S> y(2, 2);
    y(0, 0) = (mul2_local(q * s) - pr) / den;
    y(0, 1) = pr / den;
    y(1, 0) = y(0, 1); // symmetric by construction
    y(1, 1) = -mul2_local(pr) / den;
    return y;
}

template <class S>
ResidualReport residuals_impl(const Matrix<S> &pi0, const Matrix<S> &y, const CurveParams &p,
                              const QuadratureConfig &cfg) {
    const int g = p.genus;
    ResidualReport rep;
    rep.symmetry = max_abs_diff(y, transpose(y));
    rep.re_part = 0.0;

    LUDecomposition<S> luy(y);
    rep.det_minus_one = luy.singular ? 1.0 : std::abs(to_double(luy.det() - S(1.0)));

    Matrix<S> sym(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) sym(i, j) = half_local(y(i, j) + y(j, i));
    Matrix<S> chol;
    rep.cholesky_ok = cholesky(sym, chol);

    rep.square_condition = square_condition_residual(p, cfg);

    if (g == 2) rep.closed_form_delta = max_abs_diff(y, closed_form_from_pi0(pi0));

    // Pi = A^-1 C route and C = B T, assembled from the same Pi0
    Matrix<S> a(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) a(i, j) = mul2_local(pi0(i, j));
    Matrix<S> c = m_pi0_n(pi0, build_N(g));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) c(i, j) = mul2_local(c(i, j));
    LUDecomposition<S> lua(a);
    const double path_delta = lua.singular ? 1.0 : max_abs_diff(lua.solve(c), y);

    Matrix<S> b = m_pi0_j(pi0);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) b(i, j) = mul2_local(b(i, j));
    const Matrix<S> bt = b * convert<S>(gamma_coeffs(g).T);
    rep.lemma_consistency = std::max(path_delta, max_abs_diff(c, bt));
    return rep;
}

} // namespace

Mat build_Pi0(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (cfg.precision == Precision::extended)
        return narrow(build_pi0_impl<DDouble>(p, cfg, true, nullptr));
    return build_pi0_impl<double>(p, cfg, true, nullptr);
}

Mat build_Pi0_serial(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (cfg.precision == Precision::extended)
        return narrow(build_pi0_impl<DDouble>(p, cfg, false, nullptr));
    return build_pi0_impl<double>(p, cfg, false, nullptr);
}

ABCMats build_ABC(const CurveParams &p, const QuadratureConfig &cfg) {
    const Mat pi0 = build_Pi0(p, cfg);
    const int g = p.genus;
    ABCMats out;
    out.A.m = Mat(g, g);
    out.A.imaginary = false;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) out.A.m(i, j) = 2.0 * pi0(i, j);
    out.B.m = m_pi0_j(pi0);
    out.B.imaginary = true;
    out.C.m = m_pi0_n(pi0, build_N(g));
    out.C.imaginary = true;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            out.B.m(i, j) *= 2.0;
            out.C.m(i, j) *= 2.0;
        }
    return out;
}

PeriodSet period_matrix(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    PeriodSet ps;
    ps.params = p;
    ps.precision = cfg.precision;
    ps.M = build_M(p.genus);
    ps.N = build_N(p.genus);
    if (cfg.precision == Precision::extended) {
        period_pipeline<DDouble>(p, cfg, ps.Pi0_dd, ps.Y_dd, ps.nodes_total);
        ps.Pi0 = narrow(ps.Pi0_dd);
        ps.Y = narrow(ps.Y_dd);
    } else {
        period_pipeline<double>(p, cfg, ps.Pi0, ps.Y, ps.nodes_total);
    }
    return ps;
}

Mat genus2_closed_form(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (p.genus != 2) throw validation_error("closed form is genus 2 only");
    if (cfg.precision == Precision::extended) {
        auto pi0 = build_pi0_impl<DDouble>(p, cfg, true, nullptr);
        return narrow(closed_form_from_pi0(pi0));
    }
    auto pi0 = build_pi0_impl<double>(p, cfg, true, nullptr);
    return closed_form_from_pi0(pi0);
}

ResidualReport residuals(const PeriodSet &ps, const CurveParams &p, const QuadratureConfig &cfg) {
    if (ps.precision == Precision::extended && !ps.Y_dd.empty())
        return residuals_impl<DDouble>(ps.Pi0_dd, ps.Y_dd, p, cfg);
    return residuals_impl<double>(ps.Pi0, ps.Y, p, cfg);
}

} // namespace periodica
