#ifndef PERIODICA_PERIODS_HPP
#define PERIODICA_PERIODS_HPP

// Assembly of Pi0, M, N and the period matrix Pi = i Pi0^-1 M Pi0 N. Pi is
// kept as the real matrix Y with a fixed i prefactor; no complex arithmetic
// anywhere, which makes the Re(Pi)=0 check structural.

#include <optional>
#include <string>
#include <vector>

#include "periodica/curve.hpp"
#include "periodica/linalg.hpp"
#include "periodica/quadrature.hpp"

namespace periodica {

// lower-triangular T with T_{k,j} = (-1)^(k-j); column j holds the
// beta-coefficients of gamma_j
struct GammaCoeffs {
    MatI T;
};

struct ScaledMat {
    Mat m;
    bool imaginary = false; // value is i*m when set
};

struct ABCMats {
    ScaledMat A, B, C; // A = 2 Pi0, B = 2i M Pi0 J, C = 2i M Pi0 N
};

struct PeriodSet {
    CurveParams params;
    Precision precision = Precision::standard;
    Mat Pi0;
    Mat Y; // Pi = i Y, raw solve output (symmetry checked, not enforced)
    MatI M, N;
    long nodes_total = 0;
    // working-precision copies kept in extended mode so residuals are
    // measured before narrowing (empty otherwise)
    MatDD Pi0_dd, Y_dd;
};

struct ResidualReport {
    double symmetry = 0.0;      // max |Y - Y^T|
    double re_part = 0.0;       // structurally zero, reported for the record
    double det_minus_one = 0.0; // |det Y - 1|, i.e. det Pi = i^g
    bool cholesky_ok = false;   // on (Y + Y^T)/2
    double square_condition = 0.0;
    std::optional<double> closed_form_delta; // genus 2 only
    double lemma_consistency = 0.0;          // A/B/C cross-check deltas
};

// config-exposed gates, not hard-coded asserts
struct ResidualGates {
    double tol_sym = 1e-8;
    double tol_det = 1e-8;
    double tol_square = 1e-10;
    double tol_closed = 1e-8;

    static ResidualGates defaults(Precision p);
};

std::vector<std::string> failed_gates(const ResidualReport &r, const ResidualGates &g);

MatI build_M(int genus);
MatI build_N(int genus);
GammaCoeffs gamma_coeffs(int genus);

// Pi0 entry evaluation; the parallel kernel and the serial reference produce
// bit-identical matrices (fixed node sets, one thread per integral).
Mat build_Pi0(const CurveParams &p, const QuadratureConfig &cfg);
Mat build_Pi0_serial(const CurveParams &p, const QuadratureConfig &cfg);

ABCMats build_ABC(const CurveParams &p, const QuadratureConfig &cfg);

PeriodSet period_matrix(const CurveParams &p, const QuadratureConfig &cfg);

// Y = (1/(ps-qr)) [[2qs-pr, pr], [pr, -2pr]]; exactly symmetric by construction.
Mat genus2_closed_form(const CurveParams &p, const QuadratureConfig &cfg);

ResidualReport residuals(const PeriodSet &ps, const CurveParams &p, const QuadratureConfig &cfg);

} // namespace periodica

#endif // PERIODICA_PERIODS_HPP
