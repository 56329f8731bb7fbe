// periodica: period matrices of the curves w^2 = z(z^2-1)(z^2-a_1^2)...(z^2-a_{g-1}^2)
// and their staircase polygons.
//
// Exit codes: 0 ok, 2 validation failure, 3 numerical non-convergence,
// 4 residual gate failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "periodica/report.hpp"

namespace {

using namespace periodica;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitGate = 4;

std::vector<double> parse_list(const std::string &s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw validation_error("empty entry in list '" + s + "'");
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception &) {
            throw validation_error("not a number: '" + item + "'");
        }
        if (pos != item.size()) throw validation_error("not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw validation_error("empty list");
    return out;
}

struct CommonOpts {
    int genus = 0;
    std::string a_list;
    std::string precision; // empty: env default, then standard
    double tol = 0.0;      // 0: per-precision default
    int max_level = 12;
    bool oracle = false;
    std::string format; // empty: pretty on terminals, json otherwise
    std::string output; // empty: stdout
};

void add_curve_options(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--genus", o.genus, "curve genus (>= 2)")->required();
    cmd->add_option("--a", o.a_list, "comma-separated branch parameters a_1..a_{g-1}")->required();
}

void add_run_options(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--precision", o.precision, "standard | extended (env PERIODICA_PRECISION)");
    cmd->add_option("--tol", o.tol, "quadrature target relative tolerance");
    cmd->add_option("--max-level", o.max_level, "tanh-sinh refinement limit");
    cmd->add_flag("--oracle", o.oracle, "use the Gauss-Kronrod oracle scheme");
    cmd->add_option("--format", o.format, "json | csv | pretty");
    cmd->add_option("--output,-o", o.output, "output path (default stdout)");
}

QuadratureConfig make_config(const CommonOpts &o) {
    QuadratureConfig cfg;
    std::string prec = o.precision;
    if (prec.empty()) {
        const char *env = std::getenv("PERIODICA_PRECISION");
        prec = env ? env : "standard";
    }
    cfg.precision = precision_from_name(prec);
    cfg.target_rel_tol =
        o.tol > 0.0 ? o.tol : (cfg.precision == Precision::extended ? 1e-25 : 1e-12);
    cfg.max_level = o.max_level;
    cfg.oracle_mode = o.oracle;
    validate_config(cfg);
    return cfg;
}

std::string pick_format(const CommonOpts &o) {
    if (!o.format.empty()) {
        if (o.format != "json" && o.format != "csv" && o.format != "pretty")
            throw validation_error("unknown format '" + o.format + "'");
        return o.format;
    }
    return isatty(STDOUT_FILENO) ? "pretty" : "json";
}

// single atomic write: stdout directly, files via temp + rename
void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move output into place at " + path);
}

template <class R>
void emit_report(const R &rep, const CommonOpts &o) {
    const std::string fmt = pick_format(o);
    if (fmt == "json")
        emit(to_json(rep).dump(2) + "\n", o.output);
    else if (fmt == "csv")
        emit(to_csv(rep), o.output);
    else
        emit(to_pretty(rep), o.output);
}

struct GateOpts {
    double tol_sym = 0.0, tol_det = 0.0, tol_square = 0.0, tol_closed = 0.0;
};

void add_gate_options(CLI::App *cmd, GateOpts &o) {
    cmd->add_option("--tol-sym", o.tol_sym, "symmetry gate");
    cmd->add_option("--tol-det", o.tol_det, "|det Y - 1| gate");
    cmd->add_option("--tol-square", o.tol_square, "square-condition gate");
    cmd->add_option("--tol-closed", o.tol_closed, "genus-2 closed-form gate");
}

ResidualGates make_gates(const GateOpts &o, Precision p) {
    ResidualGates g = ResidualGates::defaults(p);
    if (o.tol_sym > 0.0) g.tol_sym = o.tol_sym;
    if (o.tol_det > 0.0) g.tol_det = o.tol_det;
    if (o.tol_square > 0.0) g.tol_square = o.tol_square;
    if (o.tol_closed > 0.0) g.tol_closed = o.tol_closed;
    return g;
}

CurveParams parse_curve(const CommonOpts &o) {
    const auto params = validate_params(o.genus, parse_list(o.a_list));
    if (params.clustered)
        std::cerr << "advisory: clustered branch points (min gap " << params.min_gap
                  << " < 1e-3); extended precision recommended\n";
    return params;
}

int run_period(const CommonOpts &o, const GateOpts &go, bool strict) {
    const auto params = parse_curve(o);
    const auto cfg = make_config(o);
    const auto ps = period_matrix(params, cfg);
    const auto rr = residuals(ps, params, cfg);
    emit_report(make_period_report(ps, rr), o);
    if (strict) {
        const auto failed = failed_gates(rr, make_gates(go, cfg.precision));
        if (!failed.empty()) {
            std::cerr << "gate failure:";
            for (const auto &f : failed) std::cerr << ' ' << f;
            std::cerr << '\n';
            return kExitGate;
        }
    }
    return kExitOk;
}

int run_verify(const CommonOpts &o, const GateOpts &go) {
    const auto params = parse_curve(o);
    const auto cfg = make_config(o);
    const auto ps = period_matrix(params, cfg);
    const auto rr = residuals(ps, params, cfg);
    emit_report(make_period_report(ps, rr), o);
    const auto failed = failed_gates(rr, make_gates(go, cfg.precision));
    if (!failed.empty()) {
        std::cerr << "gate failure:";
        for (const auto &f : failed) std::cerr << ' ' << f;
        std::cerr << '\n';
        return kExitGate;
    }
    return kExitOk;
}

int run_polygon(const CommonOpts &o, const GateOpts &go, const std::string &svg_path) {
    const auto params = parse_curve(o);
    const auto cfg = make_config(o);
    LayoutReport rep;
    rep.genus = params.genus;
    rep.a = params.a;
    rep.layout = rectangle_dims(params, cfg);
    rep.square_gate = go.tol_square > 0.0
                          ? go.tol_square
                          : ResidualGates::defaults(cfg.precision).tol_square;
    rep.square_ok = rep.layout.square_residual <= rep.square_gate;
    if (!svg_path.empty()) emit(layout_svg(rep.layout), svg_path);
    emit_report(rep, o);
    return kExitOk;
}

int run_invert(const CommonOpts &o, const std::string &rho_list, const std::string &guess_list,
               int max_iter, double newton_tol) {
    const auto rho = parse_list(rho_list);
    ModuliTarget target{rho};
    const auto guess = validate_params(o.genus, parse_list(guess_list));
    InvertOptions opts;
    opts.quad = make_config(o);
    if (max_iter > 0) opts.max_iter = max_iter;
    if (newton_tol > 0.0) opts.tol = newton_tol;
    try {
        const auto res = invert_moduli(o.genus, target, guess, opts);
        InvertReport rep;
        rep.genus = o.genus;
        rep.rho_target = rho;
        rep.a_recovered = res.params.a;
        rep.iterations = res.iterations;
        rep.residual = res.residual;
        emit_report(rep, o);
        return kExitOk;
    } catch (const inversion_error &e) {
        std::cerr << "inversion failed: " << e.what() << "\niteration trace:\n" << e.trace;
        return kExitNumerical;
    }
}

int run_selftest(const CommonOpts &o) {
    int failures = 0;
    auto check = [&](bool ok, const std::string &label, const std::string &detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << label << " (" << detail << ")\n";
        if (!ok) ++failures;
    };
    const double pi = 3.14159265358979323846;

    QuadratureConfig std_cfg;
    auto r = calibration_pi(std_cfg);
    {
        std::ostringstream d;
        d << "value " << r.value << ", error " << std::abs(r.value - pi);
        check(r.converged && std::abs(r.value - pi) <= 1e-13, "calibration pi, standard", d.str());
    }
    QuadratureConfig ext_cfg;
    ext_cfg.precision = Precision::extended;
    ext_cfg.target_rel_tol = 1e-25;
    r = calibration_pi(ext_cfg);
    {
        std::ostringstream d;
        d << "error " << std::abs(r.value - pi);
        check(r.converged && std::abs(r.value - pi) <= 1e-15, "calibration pi, extended", d.str());
    }
    {
        // double-double sanity: exp(1) against e to ~1e-31
        const DDouble e_dd(2.718281828459045091e+00, 1.445646891729250158e-16);
        const double err = std::abs(to_double(exp(DDouble(1.0)) - e_dd));
        std::ostringstream d;
        d << "error " << err;
        check(err < 1e-30, "double-double exp", d.str());
    }
    {
        bool ok = true;
        for (int g = 2; g <= 12 && ok; ++g) {
            const MatI m = build_M(g), n = build_N(g), t = gamma_coeffs(g).T;
            for (int i = 0; i < g && ok; ++i)
                for (int j = 0; j < g && ok; ++j) {
                    int mm = 0, jt = 0;
                    for (int k = 0; k < g; ++k) {
                        mm += m(i, k) * m(k, j);
                        jt += (i + k == g - 1 ? 1 : 0) * t(k, j);
                    }
                    if (mm != (i == j ? 1 : 0)) ok = false;
                    if (jt != n(i, j)) ok = false;
                    if (n(i, j) < -1 || n(i, j) > 1) ok = false;
                }
        }
        check(ok, "integer identities g=2..12", "M^2 = I, J T = N, N in {-1,0,1}");
    }
    {
        const auto params = validate_params(2, {2.0});
        QuadratureConfig oracle_cfg;
        oracle_cfg.oracle_mode = true;
        double worst = 0.0;
        for (const auto &e : entry_table(params)) {
            const double a = entry_value(params, e, std_cfg);
            const double b = entry_value(params, e, oracle_cfg);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1.0));
        }
        std::ostringstream d;
        d << "max relative deviation " << worst;
        check(worst <= 1e-10, "primary vs oracle, genus 2, a=[2]", d.str());
    }
    (void)o;
    return failures == 0 ? kExitOk : kExitGate;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"period matrices of w^2 = z(z^2-1)(z^2-a_1^2)...(z^2-a_{g-1}^2) from staircase polygons"};
    app.require_subcommand(1);

    CommonOpts o;
    GateOpts gates;
    bool strict = false;
    std::string svg_path, rho_list, guess_list;
    int max_iter = 0;
    double newton_tol = 0.0;

    auto *cmd_period = app.add_subcommand("period", "compute Pi = i Pi0^-1 M Pi0 N");
    add_curve_options(cmd_period, o);
    add_run_options(cmd_period, o);
    add_gate_options(cmd_period, gates);
    cmd_period->add_flag("--strict", strict, "exit 4 when a residual gate fails");

    auto *cmd_verify = app.add_subcommand("verify", "run all residual gates");
    add_curve_options(cmd_verify, o);
    add_run_options(cmd_verify, o);
    add_gate_options(cmd_verify, gates);

    auto *cmd_polygon = app.add_subcommand("polygon", "reconstruct the staircase polygon");
    add_curve_options(cmd_polygon, o);
    add_run_options(cmd_polygon, o);
    add_gate_options(cmd_polygon, gates);
    cmd_polygon->add_option("--svg", svg_path, "also write an SVG rendering to this path");

    auto *cmd_invert = app.add_subcommand("invert", "recover branch parameters from aspect ratios");
    cmd_invert->add_option("--genus", o.genus, "curve genus (>= 2)")->required();
    cmd_invert->add_option("--rho", rho_list, "target aspect ratios rho_1..rho_{g-1}")->required();
    cmd_invert->add_option("--guess", guess_list, "starting branch parameters")->required();
    cmd_invert->add_option("--max-iter", max_iter, "Newton iteration cap (default 100)");
    cmd_invert->add_option("--tol-newton", newton_tol, "convergence tolerance (default 1e-8)");
    add_run_options(cmd_invert, o);

    auto *cmd_selftest = app.add_subcommand("selftest", "calibration integrals and exact identities");
    (void)cmd_selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (cmd_period->parsed()) return run_period(o, gates, strict);
        if (cmd_verify->parsed()) return run_verify(o, gates);
        if (cmd_polygon->parsed()) return run_polygon(o, gates, svg_path);
        if (cmd_invert->parsed()) return run_invert(o, rho_list, guess_list, max_iter, newton_tol);
        return run_selftest(o);
    } catch (const validation_error &e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const numerical_error &e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
