#include "entvol/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace entvol {

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_angle(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty angle");
    std::string body = text;
    double factor = 1.0;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        factor = 3.14159265358979323846;
        body = text.substr(0, text.size() - 2);
        if (body.empty()) body = "1";  // bare "pi"
    }
    std::size_t used = 0;
    double value;
    try {
        value = std::stod(body, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse angle '" + text + "'");
    }
    if (used != body.size())
        throw std::invalid_argument("cannot parse angle '" + text + "'");
    return value * factor;
}

Eigen::VectorXcd load_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coefficient file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument("bad coefficient file " + path + ": " + ex.what());
    }
    if (!doc.is_array() || doc.empty())
        throw std::invalid_argument("coefficient file must hold a non-empty array");
    Eigen::VectorXcd coeffs(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
            !item[1].is_number())
            throw std::invalid_argument("coefficient entries must be [re, im] pairs");
        coeffs(static_cast<Eigen::Index>(i)) = {item[0].get<double>(),
                                                item[1].get<double>()};
    }
    return coeffs;
}

void write_trace_csv(std::ostream& out, const VolumeTrace& trace) {
    const int n = trace.samples.empty()
                      ? 0
                      : static_cast<int>(trace.samples.front().y_per_qubit.size());
    out << "t";
    for (int k = 1; k <= n; ++k) out << ",Y_" << k;
    out << ",Y_s,case\n";
    for (std::size_t j = 0; j < trace.samples.size(); ++j) {
        const VolumeSample& s = trace.samples[j];
        out << format_g17(trace.times[j]);
        for (int k = 0; k < n; ++k) out << ',' << format_g17(s.y_per_qubit(k));
        out << ',' << format_g17(s.y_s) << ',' << static_cast<int>(s.case_label)
            << '\n';
    }
}

nlohmann::json freeze_report_json(const FreezeReport& report,
                                  const nlohmann::json& config_echo) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& iv : report.intervals)
        intervals.push_back({{"t_start", iv.t_start},
                             {"t_end", iv.t_end},
                             {"value", iv.frozen_value},
                             {"mechanism", to_string(iv.mechanism)}});
    nlohmann::json doc{
        {"intervals", std::move(intervals)},
        {"r_f", report.r_f},
        {"horizon", report.horizon},
        {"classification", to_string(report.classification)},
        {"certificate", to_string(report.certificate)},
        {"config", config_echo},
    };
    doc["predicted_case1"] =
        report.predicted_case1 ? nlohmann::json(*report.predicted_case1) : nullptr;
    doc["predicted_case2"] =
        report.predicted_case2 ? nlohmann::json(*report.predicted_case2) : nullptr;
    return doc;
}

void write_phase_csv(std::ostream& out, const PhaseDiagramGrid& grid) {
    out << "N,theta,R_f,frozen_value,classification\n";
    for (const PhaseCell& cell : grid.cells) {
        out << cell.n << ',' << format_g17(cell.theta) << ',' << format_g17(cell.r_f)
            << ',';
        if (cell.frozen_value)
            out << format_g17(*cell.frozen_value);
        else
            out << "NA";
        out << ',' << to_string(cell.classification) << '\n';
    }
}

}  // namespace entvol
