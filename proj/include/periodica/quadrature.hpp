#ifndef PERIODICA_QUADRATURE_HPP
#define PERIODICA_QUADRATURE_HPP

// Integrals of z^(j-1)/sqrt|f(z)| between consecutive branch points (inverse
// square-root singularities at both finite endpoints) and over the improper
// tail to infinity. Primary scheme: tanh-sinh with level doubling. Independent
// oracle: sin substitution followed by adaptive Gauss-Kronrod 15.

#include <functional>
#include <stdexcept>

#include "periodica/curve.hpp"

namespace periodica {

enum class Precision { standard, extended };

const char *precision_name(Precision p);
Precision precision_from_name(const std::string &name);

struct QuadratureConfig {
    double target_rel_tol = 1e-12;
    int max_level = 12; // node count doubles per level
    Precision precision = Precision::standard;
    bool oracle_mode = false; // substitute the independent oracle for the primary scheme
};

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long nodes_used = 0;
    bool converged = false;
};

class numerical_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class convergence_error : public numerical_error {
  public:
    using numerical_error::numerical_error;
};

void validate_config(const QuadratureConfig &cfg);

// Integral over [lo,hi], which must be an interval between consecutive finite
// branch points. Non-convergence is reported through converged=false.
IntegralResult integrate_endpoint_singular(const CurveParams &p, int j, double lo, double hi,
                                           const QuadratureConfig &cfg);

// Integral over [a_{g-1}, inf), computed via z = a_{g-1}/s^2 and the
// endpoint-singular scheme on [0,1].
IntegralResult tail_integral(const CurveParams &p, int j, const QuadratureConfig &cfg);

// Signed Pi0 entry; throws convergence_error when the integral did not converge.
double entry_value(const CurveParams &p, const EntrySpec &e, const QuadratureConfig &cfg);

// Built-in calibration: f replaced by z(1-z) on [0,1], j=1; exact value pi.
IntegralResult calibration_pi(const QuadratureConfig &cfg);

// Oracle routes (double precision by design; structurally independent error
// behavior from the tanh-sinh path).
IntegralResult oracle_interval(const CurveParams &p, int j, int m, double tol = 1e-13);
IntegralResult oracle_tail(const CurveParams &p, int j, double tol = 1e-13);

// Plain adaptive Gauss-Kronrod 15 on a smooth integrand (exposed for tests).
IntegralResult gk_integrate(const std::function<double(double)> &f, double a, double b,
                            double tol);

} // namespace periodica

#endif // PERIODICA_QUADRATURE_HPP
