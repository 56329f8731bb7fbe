#ifndef PERIODICA_REPORT_HPP
#define PERIODICA_REPORT_HPP

// Report structures and their JSON/CSV/pretty renderings. JSON is
// schema-stable and round-trips exactly; CSV prints 17 significant digits
// (bit-exact re-ingestion); pretty prints 6, matching the source tables.

#include <string>

#include <json.hpp>

#include "periodica/periods.hpp"
#include "periodica/polygon.hpp"

namespace periodica {

struct PeriodReport {
    int genus = 0;
    std::vector<double> a;
    std::string precision;
    Mat Pi0;
    MatI M, N;
    Mat Pi_im; // Y, with Pi = i Y
    ResidualReport residuals;
    long nodes_total = 0;
};

PeriodReport make_period_report(const PeriodSet &ps, const ResidualReport &rr);

nlohmann::json to_json(const PeriodReport &r);
PeriodReport period_report_from_json(const nlohmann::json &j);
std::string to_csv(const PeriodReport &r);
std::string to_pretty(const PeriodReport &r);

struct LayoutReport {
    int genus = 0;
    std::vector<double> a;
    PolygonLayout layout;
    bool square_ok = false; // square_residual within gate
    double square_gate = 0.0;
};

nlohmann::json to_json(const LayoutReport &r);
LayoutReport layout_report_from_json(const nlohmann::json &j);
std::string to_csv(const LayoutReport &r);
std::string to_pretty(const LayoutReport &r);

struct InvertReport {
    int genus = 0;
    std::vector<double> rho_target;
    std::vector<double> a_recovered;
    int iterations = 0;
    double residual = 0.0;
};

nlohmann::json to_json(const InvertReport &r);
InvertReport invert_report_from_json(const nlohmann::json &j);
std::string to_csv(const InvertReport &r);
std::string to_pretty(const InvertReport &r);

// matrices parsed back from the CSV form, keyed by name
std::vector<std::pair<std::string, Mat>> csv_matrices(const std::string &csv);

} // namespace periodica

#endif // PERIODICA_REPORT_HPP
