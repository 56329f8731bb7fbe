#include "periodica/polygon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "periodica/detail/quad_kernels.hpp"
#include "periodica/linalg.hpp"

namespace periodica {

namespace {

inline double mul2_local(double x) { return 2.0 * x; }
inline DDouble mul2_local(const DDouble &x) { return mul_pwr2(x, 2.0); }

template <class S>
std::vector<S> interval_lengths_impl(const CurveParams &p, const QuadratureConfig &cfg) {
    std::vector<S> out;
    out.reserve(p.genus + 1);
    for (int m = 0; m <= p.genus; ++m) {
        auto r = detail::interval_integral<S>(p, 1, m, cfg);
        if (!r.converged) {
            std::ostringstream os;
            os << "interval integral I_" << m << " did not converge at max_level " << cfg.max_level;
            throw convergence_error(os.str());
        }
        out.push_back(r.value);
    }
    return out;
}

template <class S>
double square_residual_impl(const CurveParams &p, const QuadratureConfig &cfg) {
    using std::abs;
    const auto lens = interval_lengths_impl<S>(p, cfg);
    const auto signs = square_condition_signs(p.genus);
    S num(0.0), den(0.0);
    for (int j = 0; j <= p.genus; ++j) {
        num += S(double(signs[j])) * lens[j];
        den += lens[j];
    }
    return std::abs(to_double(num / den));
}

// Backward recurrence with c = 1. Seed (both parities): h(P_{g-1}) = 2 I_{g-1},
// w(P_{g-1}) = 2 I_g; the direction the loop updates swaps with the parity of
// g because the cylinder orientations swap. Telescopes to the square condition
// at P0.
template <class S>
void rect_dims_impl(const CurveParams &p, const QuadratureConfig &cfg, std::vector<S> &w,
                    std::vector<S> &h) {
    const int g = p.genus;
    const auto lens = interval_lengths_impl<S>(p, cfg);
    w.assign(g, S(0.0));
    h.assign(g, S(0.0));
    h[g - 1] = mul2_local(lens[g - 1]);
    w[g - 1] = mul2_local(lens[g]);
    for (int m = g - 2; m >= 0; --m) {
        const bool width_update = (m % 2 == 0) == (g % 2 == 0);
        if (width_update) {
            w[m] = mul2_local(lens[m]) - w[m + 1];
            h[m] = h[m + 1];
        } else {
            h[m] = mul2_local(lens[m]) - h[m + 1];
            w[m] = w[m + 1];
        }
    }
    for (int m = 0; m < g; ++m)
        if (!(to_double(w[m]) > 0.0) || !(to_double(h[m]) > 0.0)) {
            std::ostringstream os;
            os << "nonpositive dimension for P" << m << " (quadrature failure or invalid input)";
            throw numerical_error(os.str());
        }
}

void rect_dims_dispatch(const CurveParams &p, const QuadratureConfig &cfg, std::vector<double> &w,
                        std::vector<double> &h) {
    if (cfg.precision == Precision::extended) {
        std::vector<DDouble> wd, hd;
        rect_dims_impl<DDouble>(p, cfg, wd, hd);
        w.clear();
        h.clear();
        for (const auto &v : wd) w.push_back(to_double(v));
        for (const auto &v : hd) h.push_back(to_double(v));
    } else {
        rect_dims_impl<double>(p, cfg, w, h);
    }
}

std::string plabel(int i) { return "P" + std::to_string(i); }
std::string qlabel(int i) { return "Q" + std::to_string(i); }

} // namespace

std::vector<double> interval_lengths(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (cfg.precision == Precision::extended) {
        auto v = interval_lengths_impl<DDouble>(p, cfg);
        std::vector<double> out;
        for (const auto &x : v) out.push_back(to_double(x));
        return out;
    }
    return interval_lengths_impl<double>(p, cfg);
}

std::vector<int> square_condition_signs(int genus) {
    std::vector<int> s(genus + 1);
    for (int j = 0; j <= genus; ++j) s[j] = (((j + 1) / 2) % 2 == 0) ? 1 : -1;
    return s;
}

double square_condition_residual(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    if (cfg.precision == Precision::extended) return square_residual_impl<DDouble>(p, cfg);
    return square_residual_impl<double>(p, cfg);
}

PolygonLayout rectangle_dims(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    const int g = p.genus;
    std::vector<double> w, h;
    rect_dims_dispatch(p, cfg, w, h);

    PolygonLayout lay;
    lay.genus = g;
    lay.square_residual = std::abs(w[0] - h[0]) / w[0];

    // staircase positions: even g goes right, up, right, ...; odd g up, right, ...
    std::vector<double> x(g, 0.0), y(g, 0.0);
    for (int m = 1; m < g; ++m) {
        const bool rightward = (g % 2 == 0) ? (m % 2 == 1) : (m % 2 == 0);
        if (rightward) {
            x[m] = x[m - 1] + w[m - 1];
            y[m] = y[m - 1];
        } else {
            x[m] = x[m - 1];
            y[m] = y[m - 1] + h[m - 1];
        }
    }
    for (int m = 0; m < g; ++m) lay.rects.push_back({plabel(m), x[m], y[m], w[m], h[m]});

    // Q_i = r_l(P_i); l runs through the upper-left and lower-right vertices
    // of P0, which the square condition makes a 45-degree line x + y = c up to
    // quadrature error. The exact 45-degree reflection keeps the dimension
    // swap w(Q) = h(P), h(Q) = w(P) exact.
    const double c = 0.5 * (w[0] + h[0]);
    auto reflect_rect = [c](double rx, double ry, double rw, double rh) {
        return std::array<double, 4>{c - (ry + rh), c - (rx + rw), rh, rw};
    };
    for (int m = 1; m < g; ++m) {
        auto q = reflect_rect(x[m], y[m], w[m], h[m]);
        lay.rects.push_back({qlabel(m), q[0], q[1], q[2], q[3]});
    }

    // side identifications, one pair per cylinder plus its mirror
    const bool even = g % 2 == 0;
    auto add = [&](const std::string &ra, const std::string &sa, const std::string &rb,
                   const std::string &sb) {
        lay.identifications.push_back({{ra, sa}, {rb, sb}});
    };
    if (even)
        add(plabel(0), "left", plabel(1), "right");
    else
        add(plabel(0), "bottom", plabel(1), "top");
    for (int j = 1; j <= g - 2; ++j) {
        const bool horizontal = even ? (j % 2 == 0) : (j % 2 == 1);
        if (horizontal)
            add(plabel(j), "left", plabel(j + 1), "right");
        else
            add(plabel(j), "bottom", plabel(j + 1), "top");
    }
    add(plabel(g - 1), "bottom", plabel(g - 1), "top");
    // mirrors: reflection maps left<->top and right<->bottom
    auto mirror_side = [](const std::string &s) -> std::string {
        if (s == "left") return "top";
        if (s == "top") return "left";
        if (s == "right") return "bottom";
        return "right";
    };
    auto mirror_rect = [&](const std::string &r) -> std::string {
        return r == "P0" ? "P0" : "Q" + r.substr(1);
    };
    const std::size_t base = lay.identifications.size();
    for (std::size_t i = 0; i < base; ++i) {
        const auto &pr = lay.identifications[i];
        add(mirror_rect(pr.first.rect), mirror_side(pr.first.side), mirror_rect(pr.second.rect),
            mirror_side(pr.second.side));
    }

    // marked points
    auto center = [&](const RectSpec &r) {
        return std::pair<double, double>{r.x + 0.5 * r.w, r.y + 0.5 * r.h};
    };
    for (int m = 0; m < g; ++m) {
        auto [cx, cy] = center(lay.rects[m]);
        lay.points.push_back({"p" + std::to_string(m), cx, cy});
    }
    for (int m = 1; m < g; ++m) {
        auto [cx, cy] = center(lay.rects[g + m - 1]);
        lay.points.push_back({"q" + std::to_string(m), cx, cy});
    }
    const RectSpec &last = lay.rects[g - 1];
    const RectSpec &qlast = lay.rects[2 * g - 2];
    if (even) {
        lay.points.push_back({"p" + std::to_string(g), last.x + 0.5 * last.w, last.y + last.h});
        lay.points.push_back({"q" + std::to_string(g), qlast.x, qlast.y + 0.5 * qlast.h});
    } else {
        lay.points.push_back({"p" + std::to_string(g), last.x + last.w, last.y + 0.5 * last.h});
        lay.points.push_back({"q" + std::to_string(g), qlast.x + 0.5 * qlast.w, qlast.y});
    }
    lay.points.push_back({"o", last.x + last.w, last.y + last.h});
    lay.points.push_back({"o'", qlast.x, qlast.y});
    return lay;
}

std::vector<double> forward_moduli(const CurveParams &p, const QuadratureConfig &cfg) {
    validate_config(cfg);
    std::vector<double> w, h;
    rect_dims_dispatch(p, cfg, w, h);
    std::vector<double> rho;
    for (int k = 1; k < p.genus; ++k) rho.push_back(h[k] / w[k]);
    return rho;
}

// ---- SVG ---------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

const char *kPalette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085",
                          "#7f8c8d", "#f39c12", "#2c3e50", "#e74c3c", "#3498db", "#9b59b6"};

struct Frame {
    double minx, miny, scale, height, pad;
    double X(double x) const { return pad + (x - minx) * scale; }
    double Y(double y) const { return height - pad - (y - miny) * scale; }
};

std::array<double, 4> side_segment(const RectSpec &r, const std::string &side) {
    if (side == "left") return {r.x, r.y, r.x, r.y + r.h};
    if (side == "right") return {r.x + r.w, r.y, r.x + r.w, r.y + r.h};
    if (side == "top") return {r.x, r.y + r.h, r.x + r.w, r.y + r.h};
    return {r.x, r.y, r.x + r.w, r.y}; // bottom
}

} // namespace

std::string layout_svg(const PolygonLayout &layout) {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool first = true;
    for (const auto &r : layout.rects) {
        if (first) {
            minx = r.x;
            miny = r.y;
            maxx = r.x + r.w;
            maxy = r.y + r.h;
            first = false;
        }
        minx = std::min(minx, r.x);
        miny = std::min(miny, r.y);
        maxx = std::max(maxx, r.x + r.w);
        maxy = std::max(maxy, r.y + r.h);
    }
    const double span = std::max(maxx - minx, maxy - miny);
    const double pad = 40.0;
    const double target = 760.0;
    const double scale = target / span;
    const double width = (maxx - minx) * scale + 2 * pad;
    const double height = (maxy - miny) * scale + 2 * pad;
    Frame fr{minx, miny, scale, height, pad};

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width)
       << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height)
       << "\">\n";

    auto find_rect = [&](const std::string &label) -> const RectSpec & {
        for (const auto &r : layout.rects)
            if (r.label == label) return r;
        throw std::logic_error("unknown rectangle label " + label);
    };

    for (const auto &r : layout.rects) {
        const bool q = r.label[0] == 'Q';
        os << "  <rect x=\"" << fmt(fr.X(r.x)) << "\" y=\"" << fmt(fr.Y(r.y + r.h)) << "\" width=\""
           << fmt(r.w * scale) << "\" height=\"" << fmt(r.h * scale) << "\" fill=\""
           << (q ? "#fdf2e9" : "#eaf2f8") << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
        os << "  <text x=\"" << fmt(fr.X(r.x + 0.5 * r.w)) << "\" y=\""
           << fmt(fr.Y(r.y + 0.5 * r.h) - 6.0) << "\" font-size=\"15\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" fill=\"#333333\">"
           << r.label << "</text>\n";
    }

    // identified side pairs, color coded
    for (std::size_t i = 0; i < layout.identifications.size(); ++i) {
        const auto &pr = layout.identifications[i];
        const char *color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        for (const SideRef *s : {&pr.first, &pr.second}) {
            auto seg = side_segment(find_rect(s->rect), s->side);
            os << "  <line x1=\"" << fmt(fr.X(seg[0])) << "\" y1=\"" << fmt(fr.Y(seg[1]))
               << "\" x2=\"" << fmt(fr.X(seg[2])) << "\" y2=\"" << fmt(fr.Y(seg[3]))
               << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
        }
    }

    // reflection line l through the upper-left and lower-right vertices of P0
    const RectSpec &p0 = find_rect("P0");
    {
        const double c = p0.x + p0.y + 0.5 * (p0.w + p0.h);
        const double ext = 0.25 * (p0.w + p0.h);
        os << "  <line x1=\"" << fmt(fr.X(-ext)) << "\" y1=\"" << fmt(fr.Y(c + ext)) << "\" x2=\""
           << fmt(fr.X(c + ext)) << "\" y2=\"" << fmt(fr.Y(-ext))
           << "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
        os << "  <text x=\"" << fmt(fr.X(c + ext) + 4.0) << "\" y=\"" << fmt(fr.Y(-ext))
           << "\" font-size=\"13\" font-family=\"sans-serif\" fill=\"#888888\">l</text>\n";
    }

    for (const auto &pt : layout.points) {
        os << "  <circle cx=\"" << fmt(fr.X(pt.x)) << "\" cy=\"" << fmt(fr.Y(pt.y))
           << "\" r=\"3\" fill=\"#111111\"/>\n";
        os << "  <text x=\"" << fmt(fr.X(pt.x) + 5.0) << "\" y=\"" << fmt(fr.Y(pt.y) - 5.0)
           << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#111111\">" << pt.label
           << "</text>\n";
    }

    os << "</svg>\n";
    return os.str();
}

// ---- inverse problem ----------------------------------------------------------

namespace {

// midpoint projection onto 1 < a_1 < ... < a_{g-1}
std::vector<double> project_ordered(std::vector<double> cand, const std::vector<double> &cur) {
    for (std::size_t k = 0; k < cand.size(); ++k) {
        const double lower = (k == 0) ? 1.0 : cand[k - 1];
        if (!(cand[k] > lower)) {
            double v = 0.5 * (cur[k] + lower);
            cand[k] = (v > lower) ? v : lower + 1e-12 * std::max(1.0, lower);
        }
    }
    return cand;
}

double inf_norm_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

InvertResult invert_moduli(int genus, const ModuliTarget &target, const CurveParams &guess,
                           const InvertOptions &opts) {
    if (genus < 2) throw validation_error("genus must be >= 2");
    if (guess.genus != genus) throw validation_error("guess genus mismatch");
    if ((int)target.rho.size() != genus - 1)
        throw validation_error("expected " + std::to_string(genus - 1) + " target ratios");
    for (double r : target.rho)
        if (!(r > 0.0) || !std::isfinite(r)) throw validation_error("target ratios must be > 0");
    validate_config(opts.quad);

    const int n = genus - 1;
    std::vector<double> x = guess.a;
    auto fwd = [&](const std::vector<double> &v) {
        return forward_moduli(validate_params(genus, v), opts.quad);
    };

    std::ostringstream trace;
    std::vector<double> rho = fwd(x);
    double res = inf_norm_diff(rho, target.rho);

    for (int iter = 0; iter <= opts.max_iter; ++iter) {
        trace << "iter " << iter << ": residual " << res << "\n";
        if (res <= opts.tol) {
            InvertResult out;
            out.params = validate_params(genus, x);
            out.iterations = iter;
            out.residual = res;
            out.trace = trace.str();
            return out;
        }
        if (iter == opts.max_iter) break;

        // forward-difference Jacobian, one column per parameter
        Mat jac(n, n);
        std::vector<std::string> col_errors(n);
#pragma omp parallel for schedule(static)
        for (int c = 0; c < n; ++c) {
            try {
                double step = opts.fd_step * std::max(std::abs(x[c]), 1.0);
                const double upper = (c + 1 < n) ? x[c + 1] : std::numeric_limits<double>::infinity();
                while (x[c] + step >= upper) step *= 0.5;
                std::vector<double> xs = x;
                xs[c] += step;
                const auto rs = fwd(xs);
                for (int r = 0; r < n; ++r) jac(r, c) = (rs[r] - rho[r]) / step;
            } catch (const std::exception &e) {
                col_errors[c] = e.what();
            }
        }
        for (const auto &err : col_errors)
            if (!err.empty()) throw inversion_error("Jacobian evaluation failed: " + err, trace.str());

        LUDecomposition<double> lu(jac);
        if (lu.singular) throw inversion_error("Jacobian numerically singular", trace.str());
        Mat rhs(n, 1);
        for (int r = 0; r < n; ++r) rhs(r, 0) = target.rho[r] - rho[r];
        Mat d = lu.solve(rhs);

        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opts.max_backtrack; ++bt) {
            std::vector<double> cand = x;
            for (int r = 0; r < n; ++r) cand[r] += lambda * d(r, 0);
            cand = project_ordered(std::move(cand), x);
            const auto rho_c = fwd(cand);
            const double res_c = inf_norm_diff(rho_c, target.rho);
            if (res_c < res) {
                x = std::move(cand);
                rho = rho_c;
                res = res_c;
                accepted = true;
                if (lambda < 1.0) trace << "  backtracked to lambda " << lambda << "\n";
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw inversion_error("line search stalled (monotone residual growth); target may be infeasible",
                                  trace.str());
    }
    throw inversion_error("max iterations (" + std::to_string(opts.max_iter) + ") exceeded",
                          trace.str());
}

} // namespace periodica
