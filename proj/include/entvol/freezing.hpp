#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entvol/entanglement.hpp"
#include "entvol/open_dynamics.hpp"
#include "entvol/xx_dynamics.hpp"

namespace entvol {

enum class Mechanism { case1, case2, value_plateau };
enum class Classification { none, temporary, permanent };

// How a permanent verdict was established: by inspecting the sampled grid, or
// analytically (cos 2theta <= 0 makes the Case-1 inequality unconditional).
enum class Certificate { grid, analytic };

struct FreezeInterval {
    double t_start = 0.0;
    double t_end = 0.0;
    double frozen_value = 0.0;
    Mechanism mechanism = Mechanism::value_plateau;

    double length() const { return t_end - t_start; }
};

struct FreezeReport {
    std::vector<FreezeInterval> intervals;
    double r_f = 0.0;      // total frozen time / horizon
    double horizon = 0.0;
    Classification classification = Classification::none;
    std::optional<double> predicted_case1;  // 2 (n-e) cos^2 theta
    std::optional<double> predicted_case2;  // 2 n sin^2 theta + 2 e cos^2 theta
    Certificate certificate = Certificate::grid;
};

struct FreezeConfig {
    double margin_tol = 1e-12;   // sign tolerance for the case conditions
    double value_tol = 1e-6;     // absolute plateau tolerance on Y_s
    int min_len = 3;             // minimum samples per value-detector run
    double min_duration = 0.0;   // minimum interval length in time units; 0 = off
    bool refine = true;          // bisect interval boundaries between samples
    double boundary_resolution = 1e-9;  // bisection target, as fraction of horizon
};

// Uniform sign test on the margins: case1 if all >= -margin_tol, case2 if all
// <= +margin_tol; a tie (both hold) counts as case1.
CaseLabel case_condition(const TwoBranchState& state, double margin_tol = 1e-12);

// Closed-form plateau values of both mechanisms, regardless of reachability.
std::pair<double, double> predicted_frozen_values(int n, int e, double theta);

// Exact detector for two-branch traces: intervals are maximal same-label runs
// of the case condition, boundaries refined on the margin sign, value set to
// the closed form. For e = n-1 the closed form does not apply, so a candidate
// survives only if the generic-path volume is constant across it, and its
// value is then the measured mean.
FreezeReport detect_freezing_conditional(const BranchTrace& trace,
                                         const XXModel& model,
                                         const FreezeConfig& config = {});

// Generic plateau detector on a sampled volume curve: maximal runs of
// consecutive steps under value_tol, at least min_len samples long, kept only
// if the whole run stays within value_tol of its mean (slow drifts are not
// plateaus). `evaluator`, when given, maps t -> Y_s between samples so the
// boundaries can be refined.
FreezeReport detect_freezing_value(
    const std::vector<VolumeSample>& samples,
    const FreezeConfig& config = {},
    const std::function<double(double)>& evaluator = nullptr);

enum class CoefficientFamily { single_head, symmetric_W, custom };

struct PhaseDiagramConfig {
    CoefficientFamily family = CoefficientFamily::single_head;
    std::vector<int> n_axis;         // defaults to 3..10
    std::vector<double> theta_axis;  // defaults to j*pi/100, j = 1..49
    int e = 1;
    double coupling = 1.0;
    double horizon = 10.0;
    int samples = 2001;
    FreezeConfig detector;
    // Used when family == custom; returns sector coefficients for (n, e).
    std::function<Eigen::VectorXcd(int n, int e)> custom_coeffs;
};

struct PhaseCell {
    int n = 0;
    double theta = 0.0;
    double r_f = 0.0;
    std::optional<double> frozen_value;  // empty = no freezing in this cell
    Classification classification = Classification::none;
};

struct PhaseDiagramGrid {
    std::vector<int> n_axis;
    std::vector<double> theta_axis;
    std::vector<PhaseCell> cells;  // n-major, theta-minor

    const PhaseCell& at(int ni, int ti) const {
        return cells[static_cast<std::size_t>(ni) * theta_axis.size() + ti];
    }
};

std::vector<double> default_theta_axis();
std::vector<int> default_n_axis();

Eigen::VectorXcd family_coefficients(CoefficientFamily family, int n, int e);

// Scan configuration for the open-system critical angle.
struct OpenScanConfig {
    double kappa = 1.0;
    double horizon = 10.0;
    int samples = 2001;
    FreezeConfig detector = {.min_duration = 0.05};
};

FreezeReport detect_open_freezing(const OpenSystemParams& params,
                                  const FreezeConfig& config);

// Smallest theta in (0, pi/4) whose open-system trace shows a freezing
// interval, by bisection on the value detector. Throws if the predicate does
// not bracket.
double critical_theta(const OpenScanConfig& config, double bisection_tol = 1e-5);

const char* to_string(Mechanism m);
const char* to_string(Classification c);
const char* to_string(Certificate c);

}  // namespace entvol
