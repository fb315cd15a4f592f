#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "entvol/freezing.hpp"
#include "entvol/kernels.hpp"

namespace entvol {

// Shortest exact decimal form (17 significant digits).
std::string format_g17(double v);

// Radians, with an optional "pi" suffix: "0.25pi" -> pi/4. Throws
// std::invalid_argument on anything else.
double parse_angle(const std::string& text);

// JSON file holding an array of [re, im] pairs.
Eigen::VectorXcd load_coefficient_file(const std::string& path);

// Header t,Y_1,...,Y_n,Y_s,case; one row per sample; case in {1, 2, 0}.
void write_trace_csv(std::ostream& out, const VolumeTrace& trace);

// Fields: intervals [{t_start, t_end, value, mechanism}], r_f, classification,
// predicted_case1/2 (null when not applicable), certificate, horizon, config.
nlohmann::json freeze_report_json(const FreezeReport& report,
                                  const nlohmann::json& config_echo);

// Rows N,theta,R_f,frozen_value,classification; "NA" marks cells without
// freezing; N-major, theta-minor order.
void write_phase_csv(std::ostream& out, const PhaseDiagramGrid& grid);

}  // namespace entvol
