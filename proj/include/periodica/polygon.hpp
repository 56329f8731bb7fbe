#ifndef PERIODICA_POLYGON_HPP
#define PERIODICA_POLYGON_HPP

// Staircase polygon P = P0 u U(P_i u Q_i) reconstructed from the interval
// integrals: rectangle dimensions via the backward recurrence, positions per
// the parity-dependent staircase, Q_i by reflection across the line l through
// the upper-left and lower-right vertices of the central square P0.
// Normalization c = 1 throughout (shape is defined up to similarity).

#include <string>
#include <vector>

#include "periodica/curve.hpp"
#include "periodica/quadrature.hpp"

namespace periodica {

struct RectSpec {
    std::string label; // P0..P_{g-1}, Q1..Q_{g-1}
    double x = 0.0, y = 0.0; // lower-left corner
    double w = 0.0, h = 0.0;
};

struct SideRef {
    std::string rect;
    std::string side; // left | right | top | bottom
};

struct SidePair {
    SideRef first, second;
};

struct MarkedPoint {
    std::string label; // p0..pg, q1..qg, o, o'
    double x = 0.0, y = 0.0;
};

struct PolygonLayout {
    int genus = 0;
    std::vector<RectSpec> rects;            // P0..P_{g-1}, Q1..Q_{g-1}
    std::vector<SidePair> identifications;  // 2g pairs, one per cylinder
    std::vector<MarkedPoint> points;
    double square_residual = 0.0;       // |w(P0) - h(P0)| / w(P0)
    std::string scale_note = "c = 1";   // the flat-metric scaling is quotiented out
};

struct ModuliTarget {
    std::vector<double> rho; // target aspect ratios h(P_k)/w(P_k), k = 1..g-1
};

// I_0..I_g, the g finite-interval integrals plus the improper tail.
std::vector<double> interval_lengths(const CurveParams &p, const QuadratureConfig &cfg);

// Coefficients (-1)^floor((j+1)/2) of the square condition, j = 0..g.
std::vector<int> square_condition_signs(int genus);

// |sum of signed I_j| / sum I_j.
double square_condition_residual(const CurveParams &p, const QuadratureConfig &cfg);

PolygonLayout rectangle_dims(const CurveParams &p, const QuadratureConfig &cfg);

// Forward moduli map a -> rho (aspect ratios of P_1..P_{g-1}).
std::vector<double> forward_moduli(const CurveParams &p, const QuadratureConfig &cfg);

// Deterministic SVG 1.1 rendering: labeled rectangles, the reflection line l,
// the marked points, color-coded identified side pairs.
std::string layout_svg(const PolygonLayout &layout);

struct InvertOptions {
    int max_iter = 100;
    double tol = 1e-8;        // on ||rho(a) - target||_inf
    double fd_step = 1e-6;    // relative forward-difference step
    int max_backtrack = 20;
    QuadratureConfig quad;
};

struct InvertResult {
    CurveParams params;
    int iterations = 0;
    double residual = 0.0;
    std::string trace;
};

class inversion_error : public numerical_error {
  public:
    inversion_error(const std::string &msg, std::string trace_)
        : numerical_error(msg), trace(std::move(trace_)) {}
    std::string trace;
};

// Damped Newton with forward-difference Jacobian and midpoint projection onto
// the ordered domain 1 < a_1 < ... < a_{g-1}.
InvertResult invert_moduli(int genus, const ModuliTarget &target, const CurveParams &guess,
                           const InvertOptions &opts);

} // namespace periodica

#endif // PERIODICA_POLYGON_HPP
