#ifndef PERIODICA_CURVE_HPP
#define PERIODICA_CURVE_HPP

// Model of the curve family w^2 = z(z^2-1)(z^2-a_1^2)...(z^2-a_{g-1}^2) with
// 1 < a_1 < ... < a_{g-1}: branch points, the interval table between
// consecutive branch points, and the parity-dependent column/sign conventions
// of the period-matrix entries.

#include <stdexcept>
#include <string>
#include <vector>

namespace periodica {

struct CurveParams {
    int genus = 0;
    std::vector<double> a; // a_1 < ... < a_{g-1}, all > 1
    bool clustered = false; // min gap among (1, a_1, ..., a_{g-1}) below 1e-3
    double min_gap = 0.0;

    // positive finite branch points 0, 1, a_1, ..., a_{g-1} (size g+1)
    std::vector<double> branch_points() const;
};

// interval m = [b_{m-1}, b_m] in the chain 0 < 1 < a_1 < ... < a_{g-1} < inf;
// hi is +inf exactly when m == g
struct IntervalSpec {
    int m = 0;
    double lo = 0.0;
    double hi = 0.0;
    bool improper = false;
};

// one entry I_{j,k} of Pi0: sign * integral of z^(j-1)/sqrt|f| over interval m
struct EntrySpec {
    int j = 0;
    int k = 0;
    int m = 0;
    int sign = 1;
};

class validation_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Validates genus >= 2 and 1 < a_1 < ... < a_{g-1}, all finite; flags curves
// whose minimum branch-point gap is below 1e-3 (extended precision advised).
CurveParams validate_params(int genus, const std::vector<double> &a);

double f_eval(const CurveParams &p, double z);

IntervalSpec interval_spec(const CurveParams &p, int m);

// Column interval index: m(k) = g-2k+1 for k <= ceil(g/2), else 2k-g-2.
int entry_interval(int genus, int k);

// The g^2 entries in row-major (j,k) order. The unified m(k)/sign rule covers
// both parities of the four-case definition.
std::vector<EntrySpec> entry_table(const CurveParams &p);

} // namespace periodica

#endif // PERIODICA_CURVE_HPP
