#include "entvol/freezing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entvol {

namespace {

struct SampleRun {
    int first = 0;
    int last = 0;  // inclusive
    CaseLabel label = CaseLabel::none;
};

// Maximal stretches of consecutive samples sharing one non-none label.
std::vector<SampleRun> label_runs(const std::vector<CaseLabel>& labels) {
    std::vector<SampleRun> runs;
    int s = static_cast<int>(labels.size());
    int i = 0;
    while (i < s) {
        if (labels[i] == CaseLabel::none) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < s && labels[j + 1] == labels[i]) ++j;
        runs.push_back({i, j, labels[i]});
        i = j + 1;
    }
    return runs;
}

void finalize_report(FreezeReport& report, double horizon, double grid_step) {
    report.horizon = horizon;
    double frozen = 0.0;
    for (const auto& iv : report.intervals) frozen += iv.length();
    report.r_f = std::clamp(frozen / horizon, 0.0, 1.0);
    if (report.intervals.empty()) {
        report.classification = Classification::none;
    } else if (report.intervals.size() == 1 &&
               report.intervals.front().t_start <= grid_step &&
               report.intervals.front().t_end >= horizon - grid_step) {
        report.classification = Classification::permanent;
    } else {
        report.classification = Classification::temporary;
    }
}

bool constant_within(const std::vector<double>& ys, int first, int last,
                     double tol, double* mean_out) {
    double mean = 0.0;
    for (int j = first; j <= last; ++j) mean += ys[j];
    mean /= last - first + 1;
    if (mean_out) *mean_out = mean;
    for (int j = first; j + 1 <= last; ++j)
        if (std::abs(ys[j + 1] - ys[j]) >= tol) return false;
    for (int j = first; j <= last; ++j)
        if (std::abs(ys[j] - mean) >= tol) return false;
    return true;
}

}  // namespace

CaseLabel case_condition(const TwoBranchState& state, double margin_tol) {
    Eigen::VectorXd m = branch_margins(state);
    if (m.minCoeff() >= -margin_tol) return CaseLabel::case1;
    if (m.maxCoeff() <= margin_tol) return CaseLabel::case2;
    return CaseLabel::none;
}

std::pair<double, double> predicted_frozen_values(int n, int e, double theta) {
    double c2 = std::cos(theta) * std::cos(theta);
    double s2 = std::sin(theta) * std::sin(theta);
    return {2.0 * (n - e) * c2, 2.0 * n * s2 + 2.0 * e * c2};
}

FreezeReport detect_freezing_conditional(const BranchTrace& trace,
                                         const XXModel& model,
                                         const FreezeConfig& config) {
    const int s = static_cast<int>(trace.states.size());
    if (s < 2) throw std::domain_error("trace needs at least 2 samples");
    const double horizon = trace.horizon;
    const double step = horizon / (s - 1);
    const TwoBranchState& initial = trace.states.front();
    const int n = initial.n(), e = initial.e();

    std::vector<CaseLabel> labels(s);
    for (int j = 0; j < s; ++j)
        labels[j] = case_condition(trace.states[j], config.margin_tol);

    auto prop = PropagatorCache::global().get(model, e);
    auto label_at = [&](double t) {
        TwoBranchState st = initial;
        st.amps = prop->advance(initial.amps, t);
        return case_condition(st, config.margin_tol);
    };
    const double resolution = config.boundary_resolution * horizon;

    // Earliest time in (t_out, t_in] whose label matches `want`, given that
    // t_in already matches and t_out does not.
    auto refine_forward = [&](double t_out, double t_in, CaseLabel want) {
        while (t_in - t_out > resolution) {
            double mid = 0.5 * (t_out + t_in);
            (label_at(mid) == want ? t_in : t_out) = mid;
        }
        return t_in;
    };
    auto refine_backward = [&](double t_in, double t_out, CaseLabel want) {
        while (t_out - t_in > resolution) {
            double mid = 0.5 * (t_in + t_out);
            (label_at(mid) == want ? t_in : t_out) = mid;
        }
        return t_in;
    };

    // For e = n-1 the closed form is invalid, so a candidate only counts if
    // the reduced-density volume is constant across it.
    std::vector<double> generic_ys;
    if (e == n - 1) {
        generic_ys.resize(s);
        for (int j = 0; j < s; ++j)
            generic_ys[j] = entanglement_volume(embed_full(trace.states[j])).y_s;
    }

    auto [value1, value2] = predicted_frozen_values(n, e, initial.theta);

    FreezeReport report;
    report.predicted_case1 = value1;
    report.predicted_case2 = value2;
    for (const SampleRun& run : label_runs(labels)) {
        FreezeInterval iv;
        if (e == n - 1) {
            // confirmation follows the value detector's rules: enough samples,
            // small steps, and the whole run inside the tube
            if (run.last - run.first + 1 < config.min_len) continue;
            double mean = 0.0;
            if (!constant_within(generic_ys, run.first, run.last, config.value_tol, &mean))
                continue;
            iv.frozen_value = mean;
            iv.mechanism = Mechanism::value_plateau;
        } else {
            iv.frozen_value = run.label == CaseLabel::case1 ? value1 : value2;
            iv.mechanism = run.label == CaseLabel::case1 ? Mechanism::case1
                                                         : Mechanism::case2;
        }
        iv.t_start = run.first * step;
        iv.t_end = run.last * step;
        if (config.refine) {
            if (run.first > 0)
                iv.t_start = refine_forward((run.first - 1) * step, iv.t_start, run.label);
            if (run.last < s - 1)
                iv.t_end = refine_backward(iv.t_end, (run.last + 1) * step, run.label);
        }
        if (iv.t_end - iv.t_start < config.min_duration) continue;
        report.intervals.push_back(iv);
    }

    finalize_report(report, horizon, step);
    // cos 2theta <= 0 makes the Case-1 inequality hold identically, so a
    // permanent verdict is certified analytically (when the closed form applies).
    bool analytic = std::cos(2.0 * initial.theta) <= 0.0 && e != n - 1;
    report.certificate = (analytic && report.classification == Classification::permanent)
                             ? Certificate::analytic
                             : Certificate::grid;
    return report;
}

FreezeReport detect_freezing_value(const std::vector<VolumeSample>& samples,
                                   const FreezeConfig& config,
                                   const std::function<double(double)>& evaluator) {
    const int s = static_cast<int>(samples.size());
    if (s < 2) throw std::domain_error("trace needs at least 2 samples");
    if (config.min_len < 3) throw std::domain_error("min_len must be at least 3");
    const double horizon = samples.back().t - samples.front().t;
    const double step = horizon / (s - 1);

    std::vector<double> ys(s);
    for (int j = 0; j < s; ++j) ys[j] = samples[j].y_s;

    FreezeReport report;
    const double resolution = config.boundary_resolution * horizon;
    int i = 0;
    while (i + 1 < s) {
        if (std::abs(ys[i + 1] - ys[i]) >= config.value_tol) {
            ++i;
            continue;
        }
        int j = i;  // run of small steps: samples i..j+1
        while (j + 1 < s && std::abs(ys[j + 1] - ys[j]) < config.value_tol) ++j;
        int first = i, last = j;
        i = j + 1;
        if (last - first + 1 < config.min_len) continue;
        double mean = 0.0;
        // Small steps alone admit slow drifts; a plateau must hold the tube.
        if (!constant_within(ys, first, last, config.value_tol, &mean)) continue;

        FreezeInterval iv;
        iv.frozen_value = mean;
        iv.mechanism = Mechanism::value_plateau;
        iv.t_start = samples[first].t;
        iv.t_end = samples[last].t;
        if (config.refine && evaluator) {
            auto inside = [&](double t) {
                return std::abs(evaluator(t) - mean) < config.value_tol;
            };
            if (first > 0 && !inside(samples[first - 1].t)) {
                double lo = samples[first - 1].t, hi = iv.t_start;
                while (hi - lo > resolution) {
                    double mid = 0.5 * (lo + hi);
                    (inside(mid) ? hi : lo) = mid;
                }
                iv.t_start = hi;
            }
            if (last < s - 1 && !inside(samples[last + 1].t)) {
                double lo = iv.t_end, hi = samples[last + 1].t;
                while (hi - lo > resolution) {
                    double mid = 0.5 * (lo + hi);
                    (inside(mid) ? lo : hi) = mid;
                }
                iv.t_end = lo;
            }
        }
        if (iv.t_end - iv.t_start < config.min_duration) continue;
        report.intervals.push_back(iv);
    }

    finalize_report(report, horizon, step);
    return report;
}

std::vector<double> default_theta_axis() {
    std::vector<double> axis;
    for (int j = 1; j <= 49; ++j) axis.push_back(j * std::numbers::pi / 100.0);
    return axis;
}

std::vector<int> default_n_axis() {
    std::vector<int> axis;
    for (int n = 3; n <= 10; ++n) axis.push_back(n);
    return axis;
}

Eigen::VectorXcd family_coefficients(CoefficientFamily family, int n, int e) {
    auto d = static_cast<Eigen::Index>(binomial(n, e));
    if (d <= 0)
        throw std::domain_error("no sector for n=" + std::to_string(n) +
                                ", e=" + std::to_string(e));
    switch (family) {
        case CoefficientFamily::single_head: {
            Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
            c(0) = 1.0;
            return c;
        }
        case CoefficientFamily::symmetric_W:
            return Eigen::VectorXcd::Ones(d);
        case CoefficientFamily::custom:
            throw std::domain_error("custom family needs explicit coefficients");
    }
    throw std::domain_error("unknown coefficient family");
}

FreezeReport detect_open_freezing(const OpenSystemParams& params,
                                  const FreezeConfig& config) {
    std::vector<FullState> states = evolve_open(params);
    std::vector<VolumeSample> samples(states.size());
    for (std::size_t j = 0; j < states.size(); ++j) {
        samples[j] = entanglement_volume(states[j]);
        samples[j].t = params.horizon * j / static_cast<double>(states.size() - 1);
    }
    // The time axis is kappa*t, on which the amplitudes depend directly.
    auto evaluator = [theta = params.theta](double kt) {
        return open_volume(theta, 1.0, kt);
    };
    FreezeReport report = detect_freezing_value(samples, config, evaluator);
    auto [value1, value2] = predicted_frozen_values(4, 2, params.theta);
    report.predicted_case1 = value1;
    report.predicted_case2 = value2;
    if (std::cos(2.0 * params.theta) <= 0.0 &&
        report.classification == Classification::permanent)
        report.certificate = Certificate::analytic;
    return report;
}

double critical_theta(const OpenScanConfig& config, double bisection_tol) {
    auto has_freezing = [&](double theta) {
        OpenSystemParams params{theta, config.kappa, config.horizon, config.samples};
        return !detect_open_freezing(params, config.detector).intervals.empty();
    };
    double lo = 1e-3;
    double hi = std::numbers::pi / 4.0 - 1e-9;
    if (has_freezing(lo))
        throw std::runtime_error("freezing already present at the lower bracket");
    if (!has_freezing(hi))
        throw std::runtime_error("no freezing at the upper bracket");
    while (hi - lo > bisection_tol) {
        double mid = 0.5 * (lo + hi);
        (has_freezing(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

const char* to_string(Mechanism m) {
    switch (m) {
        case Mechanism::case1: return "case1";
        case Mechanism::case2: return "case2";
        case Mechanism::value_plateau: return "value_plateau";
    }
    return "?";
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::none: return "none";
        case Classification::temporary: return "temporary";
        case Classification::permanent: return "permanent";
    }
    return "?";
}

const char* to_string(Certificate c) {
    switch (c) {
        case Certificate::grid: return "grid";
        case Certificate::analytic: return "analytic";
    }
    return "?";
}

}  // namespace entvol
