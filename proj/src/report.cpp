#include "periodica/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace periodica {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

nlohmann::json mat_json(const Mat &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json mat_json(const MatI &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const nlohmann::json &j) {
    const int r = (int)j.size();
    const int c = r ? (int)j[0].size() : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
    return m;
}

MatI mati_from_json(const nlohmann::json &j) {
    const int r = (int)j.size();
    const int c = r ? (int)j[0].size() : 0;
    MatI m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<int>();
    return m;
}

void csv_matrix(std::ostringstream &os, const std::string &name, const Mat &m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            os << name << ',' << i + 1 << ',' << j + 1 << ',' << num17(m(i, j)) << '\n';
}

void csv_matrix(std::ostringstream &os, const std::string &name, const MatI &m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            os << name << ',' << i + 1 << ',' << j + 1 << ',' << m(i, j) << '\n';
}

void pretty_matrix(std::ostringstream &os, const std::string &name, const Mat &m) {
    os << name << ":\n";
    for (int i = 0; i < m.rows(); ++i) {
        os << " ";
        for (int j = 0; j < m.cols(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %12s", num6(m(i, j)).c_str());
            os << buf;
        }
        os << "\n";
    }
}

void pretty_matrix(std::ostringstream &os, const std::string &name, const MatI &m) {
    os << name << ":\n";
    for (int i = 0; i < m.rows(); ++i) {
        os << " ";
        for (int j = 0; j < m.cols(); ++j) {
            char buf[16];
            std::snprintf(buf, sizeof buf, " %3d", m(i, j));
            os << buf;
        }
        os << "\n";
    }
}

nlohmann::json residuals_json(const ResidualReport &r) {
    nlohmann::json j{{"symmetry", r.symmetry},
                     {"re_part", r.re_part},
                     {"det_minus_one", r.det_minus_one},
                     {"cholesky_ok", r.cholesky_ok},
                     {"square_condition", r.square_condition},
                     {"lemma_consistency", r.lemma_consistency}};
    if (r.closed_form_delta)
        j["closed_form_delta"] = *r.closed_form_delta;
    else
        j["closed_form_delta"] = nullptr;
    return j;
}

ResidualReport residuals_from_json(const nlohmann::json &j) {
    ResidualReport r;
    r.symmetry = j.at("symmetry").get<double>();
    r.re_part = j.at("re_part").get<double>();
    r.det_minus_one = j.at("det_minus_one").get<double>();
    r.cholesky_ok = j.at("cholesky_ok").get<bool>();
    r.square_condition = j.at("square_condition").get<double>();
    r.lemma_consistency = j.at("lemma_consistency").get<double>();
    if (!j.at("closed_form_delta").is_null())
        r.closed_form_delta = j.at("closed_form_delta").get<double>();
    return r;
}

} // namespace

PeriodReport make_period_report(const PeriodSet &ps, const ResidualReport &rr) {
    PeriodReport r;
    r.genus = ps.params.genus;
    r.a = ps.params.a;
    r.precision = precision_name(ps.precision);
    r.Pi0 = ps.Pi0;
    r.M = ps.M;
    r.N = ps.N;
    r.Pi_im = ps.Y;
    r.residuals = rr;
    r.nodes_total = ps.nodes_total;
    return r;
}

nlohmann::json to_json(const PeriodReport &r) {
    return nlohmann::json{{"genus", r.genus},
                          {"a", r.a},
                          {"precision", r.precision},
                          {"Pi0", mat_json(r.Pi0)},
                          {"M", mat_json(r.M)},
                          {"N", mat_json(r.N)},
                          {"Pi_im", mat_json(r.Pi_im)},
                          {"residuals", residuals_json(r.residuals)},
                          {"nodes_total", r.nodes_total}};
}

PeriodReport period_report_from_json(const nlohmann::json &j) {
    PeriodReport r;
    r.genus = j.at("genus").get<int>();
    r.a = j.at("a").get<std::vector<double>>();
    r.precision = j.at("precision").get<std::string>();
    r.Pi0 = mat_from_json(j.at("Pi0"));
    r.M = mati_from_json(j.at("M"));
    r.N = mati_from_json(j.at("N"));
    r.Pi_im = mat_from_json(j.at("Pi_im"));
    r.residuals = residuals_from_json(j.at("residuals"));
    r.nodes_total = j.at("nodes_total").get<long>();
    return r;
}

std::string to_csv(const PeriodReport &r) {
    std::ostringstream os;
    os << "name,row,col,value\n";
    os << "genus,0,0," << r.genus << '\n';
    for (std::size_t i = 0; i < r.a.size(); ++i) os << "a," << i + 1 << ",0," << num17(r.a[i]) << '\n';
    os << "precision,0,0," << r.precision << '\n';
    csv_matrix(os, "Pi0", r.Pi0);
    csv_matrix(os, "M", r.M);
    csv_matrix(os, "N", r.N);
    csv_matrix(os, "Pi_im", r.Pi_im);
    os << "residual.symmetry,0,0," << num17(r.residuals.symmetry) << '\n';
    os << "residual.re_part,0,0," << num17(r.residuals.re_part) << '\n';
    os << "residual.det_minus_one,0,0," << num17(r.residuals.det_minus_one) << '\n';
    os << "residual.cholesky_ok,0,0," << (r.residuals.cholesky_ok ? 1 : 0) << '\n';
    os << "residual.square_condition,0,0," << num17(r.residuals.square_condition) << '\n';
    if (r.residuals.closed_form_delta)
        os << "residual.closed_form_delta,0,0," << num17(*r.residuals.closed_form_delta) << '\n';
    os << "residual.lemma_consistency,0,0," << num17(r.residuals.lemma_consistency) << '\n';
    os << "nodes_total,0,0," << r.nodes_total << '\n';
    return os.str();
}

std::string to_pretty(const PeriodReport &r) {
    std::ostringstream os;
    os << "genus " << r.genus << ", a = [";
    for (std::size_t i = 0; i < r.a.size(); ++i) os << (i ? ", " : "") << num6(r.a[i]);
    os << "], precision " << r.precision << ", nodes " << r.nodes_total << "\n";
    pretty_matrix(os, "Pi0", r.Pi0);
    pretty_matrix(os, "M", r.M);
    pretty_matrix(os, "N", r.N);
    pretty_matrix(os, "Im(Pi)  (Pi = i * this, Re(Pi) = 0)", r.Pi_im);
    os << "residuals: symmetry " << num6(r.residuals.symmetry) << ", |det-1| "
       << num6(r.residuals.det_minus_one) << ", cholesky "
       << (r.residuals.cholesky_ok ? "ok" : "FAIL") << ", square "
       << num6(r.residuals.square_condition);
    if (r.residuals.closed_form_delta)
        os << ", closed-form " << num6(*r.residuals.closed_form_delta);
    os << ", lemma " << num6(r.residuals.lemma_consistency) << "\n";
    return os.str();
}

// ---- layout -------------------------------------------------------------------

nlohmann::json to_json(const LayoutReport &r) {
    nlohmann::json rects = nlohmann::json::array();
    for (const auto &rc : r.layout.rects)
        rects.push_back({{"label", rc.label}, {"x", rc.x}, {"y", rc.y}, {"w", rc.w}, {"h", rc.h}});
    nlohmann::json ids = nlohmann::json::array();
    for (const auto &pr : r.layout.identifications)
        ids.push_back({{"first", {{"rect", pr.first.rect}, {"side", pr.first.side}}},
                       {"second", {{"rect", pr.second.rect}, {"side", pr.second.side}}}});
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &pt : r.layout.points)
        pts.push_back({{"label", pt.label}, {"x", pt.x}, {"y", pt.y}});
    return nlohmann::json{{"genus", r.genus},
                          {"a", r.a},
                          {"normalization", r.layout.scale_note},
                          {"rects", rects},
                          {"identifications", ids},
                          {"points", pts},
                          {"square_residual", r.layout.square_residual},
                          {"square_ok", r.square_ok},
                          {"square_gate", r.square_gate}};
}

LayoutReport layout_report_from_json(const nlohmann::json &j) {
    LayoutReport r;
    r.genus = j.at("genus").get<int>();
    r.a = j.at("a").get<std::vector<double>>();
    r.layout.genus = r.genus;
    for (const auto &rc : j.at("rects"))
        r.layout.rects.push_back({rc.at("label").get<std::string>(), rc.at("x").get<double>(),
                                  rc.at("y").get<double>(), rc.at("w").get<double>(),
                                  rc.at("h").get<double>()});
    for (const auto &pr : j.at("identifications"))
        r.layout.identifications.push_back(
            {{pr.at("first").at("rect").get<std::string>(),
              pr.at("first").at("side").get<std::string>()},
             {pr.at("second").at("rect").get<std::string>(),
              pr.at("second").at("side").get<std::string>()}});
    for (const auto &pt : j.at("points"))
        r.layout.points.push_back({pt.at("label").get<std::string>(), pt.at("x").get<double>(),
                                   pt.at("y").get<double>()});
    r.layout.square_residual = j.at("square_residual").get<double>();
    r.layout.scale_note = j.at("normalization").get<std::string>();
    r.square_ok = j.at("square_ok").get<bool>();
    r.square_gate = j.at("square_gate").get<double>();
    return r;
}

std::string to_csv(const LayoutReport &r) {
    std::ostringstream os;
    os << "name,row,col,value\n";
    os << "genus,0,0," << r.genus << '\n';
    for (std::size_t i = 0; i < r.a.size(); ++i) os << "a," << i + 1 << ",0," << num17(r.a[i]) << '\n';
    for (std::size_t i = 0; i < r.layout.rects.size(); ++i) {
        const auto &rc = r.layout.rects[i];
        os << "rect." << rc.label << ',' << i + 1 << ",1," << num17(rc.x) << '\n';
        os << "rect." << rc.label << ',' << i + 1 << ",2," << num17(rc.y) << '\n';
        os << "rect." << rc.label << ',' << i + 1 << ",3," << num17(rc.w) << '\n';
        os << "rect." << rc.label << ',' << i + 1 << ",4," << num17(rc.h) << '\n';
    }
    os << "square_residual,0,0," << num17(r.layout.square_residual) << '\n';
    os << "square_ok,0,0," << (r.square_ok ? 1 : 0) << '\n';
    return os.str();
}

std::string to_pretty(const LayoutReport &r) {
    std::ostringstream os;
    os << "genus " << r.genus << ", a = [";
    for (std::size_t i = 0; i < r.a.size(); ++i) os << (i ? ", " : "") << num6(r.a[i]);
    os << "], normalization c = 1\n";
    os << "rectangles (label, x, y, w, h):\n";
    for (const auto &rc : r.layout.rects)
        os << "  " << rc.label << "  " << num6(rc.x) << "  " << num6(rc.y) << "  " << num6(rc.w)
           << "  " << num6(rc.h) << "\n";
    os << "identified sides:\n";
    for (const auto &pr : r.layout.identifications)
        os << "  " << pr.first.rect << "." << pr.first.side << " ~ " << pr.second.rect << "."
           << pr.second.side << "\n";
    os << "square residual " << num6(r.layout.square_residual) << " ("
       << (r.square_ok ? "ok" : "FAIL") << " at gate " << num6(r.square_gate) << ")\n";
    return os.str();
}

// ---- invert -------------------------------------------------------------------

nlohmann::json to_json(const InvertReport &r) {
    return nlohmann::json{{"genus", r.genus},
                          {"rho_target", r.rho_target},
                          {"a_recovered", r.a_recovered},
                          {"iterations", r.iterations},
                          {"residual", r.residual}};
}

InvertReport invert_report_from_json(const nlohmann::json &j) {
    InvertReport r;
    r.genus = j.at("genus").get<int>();
    r.rho_target = j.at("rho_target").get<std::vector<double>>();
    r.a_recovered = j.at("a_recovered").get<std::vector<double>>();
    r.iterations = j.at("iterations").get<int>();
    r.residual = j.at("residual").get<double>();
    return r;
}

std::string to_csv(const InvertReport &r) {
    std::ostringstream os;
    os << "name,row,col,value\n";
    os << "genus,0,0," << r.genus << '\n';
    for (std::size_t i = 0; i < r.rho_target.size(); ++i)
        os << "rho_target," << i + 1 << ",0," << num17(r.rho_target[i]) << '\n';
    for (std::size_t i = 0; i < r.a_recovered.size(); ++i)
        os << "a_recovered," << i + 1 << ",0," << num17(r.a_recovered[i]) << '\n';
    os << "iterations,0,0," << r.iterations << '\n';
    os << "residual,0,0," << num17(r.residual) << '\n';
    return os.str();
}

std::string to_pretty(const InvertReport &r) {
    std::ostringstream os;
    os << "genus " << r.genus << ", recovered a = [";
    for (std::size_t i = 0; i < r.a_recovered.size(); ++i)
        os << (i ? ", " : "") << num17(r.a_recovered[i]);
    os << "]\n" << r.iterations << " Newton iterations, final residual " << num6(r.residual)
       << "\n";
    return os.str();
}

std::vector<std::pair<std::string, Mat>> csv_matrices(const std::string &csv) {
    struct Cell {
        int r, c;
        double v;
    };
    std::vector<std::pair<std::string, std::vector<Cell>>> groups;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line); // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::size_t p1 = line.find(','), p2 = line.find(',', p1 + 1), p3 = line.find(',', p2 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos || p3 == std::string::npos) continue;
        const std::string name = line.substr(0, p1);
        const int row = std::stoi(line.substr(p1 + 1, p2 - p1 - 1));
        const int col = std::stoi(line.substr(p2 + 1, p3 - p2 - 1));
        if (row < 1 || col < 1) continue; // scalars and vectors
        char *end = nullptr;
        const double v = std::strtod(line.c_str() + p3 + 1, &end);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto &g) { return g.first == name; });
        if (it == groups.end()) {
            groups.push_back({name, {}});
            it = groups.end() - 1;
        }
        it->second.push_back({row, col, v});
    }
    std::vector<std::pair<std::string, Mat>> out;
    for (const auto &[name, cells] : groups) {
        int mr = 0,mc = 0;
        for (const auto &c : cells) {
            mr = std::max(mr, c.r);
            mc = std::max(mc, c.c);
        }
        Mat m(mr, mc);
        for (const auto &c : cells) m(c.r - 1, c.c - 1) = c.v;
        out.push_back({name, std::move(m)});
    }
    return out;
}

} // namespace periodica
