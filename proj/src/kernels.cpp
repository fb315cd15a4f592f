#include "entvol/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace entvol {

int thread_budget() {
    int budget = omp_get_max_threads();
    if (const char* env = std::getenv("ENTVOL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) budget = std::min<long>(budget, v);
    }
    return std::max(budget, 1);
}

namespace {

VolumeSample closed_sample(const TwoBranchState& initial, const SectorPropagator& prop,
                           double t) {
    TwoBranchState st = initial;
    st.amps = prop.advance(initial.amps, t);
    const int n = st.n(), e = st.e();
    VolumeSample sample;
    if (e == n - 1) {
        // Closed form not valid here; the reduced-density route is the
        // authority for the Y columns, margins still label the case.
        sample = entanglement_volume(embed_full(st));
        sample.r_squared = excitation_weights(st);
    } else {
        sample = fast_volume(st);
    }
    sample.case_label = case_condition(st);
    sample.t = t;
    return sample;
}

VolumeSample open_sample(double theta, double kt) {
    auto [xi, chi] = damping_amplitudes(1.0, kt);
    VolumeSample sample = entanglement_volume(ccrr_state(theta, xi, chi));
    sample.case_label = case_condition(open_flipped_two_branch(theta, xi, chi));
    sample.t = kt;
    return sample;
}

PhaseCell phase_cell(const PhaseDiagramConfig& config, int n, double theta) {
    Eigen::VectorXcd coeffs =
        config.family == CoefficientFamily::custom
            ? config.custom_coeffs(n, config.e)
            : family_coefficients(config.family, n, config.e);
    TwoBranchState state = make_two_branch(n, config.e, coeffs, theta, 0.0);
    XXModel model{n, config.coupling};
    BranchTrace trace = evolve_trace(state, model, config.horizon, config.samples);
    FreezeReport report = detect_freezing_conditional(trace, model, config.detector);

    PhaseCell cell;
    cell.n = n;
    cell.theta = theta;
    cell.r_f = report.r_f;
    cell.classification = report.classification;
    if (!report.intervals.empty()) {
        const FreezeInterval* longest = &report.intervals.front();
        for (const auto& iv : report.intervals)
            if (iv.length() > longest->length()) longest = &iv;
        cell.frozen_value = longest->frozen_value;
    }
    return cell;
}

}  // namespace

VolumeTrace closed_volume_trace(const TwoBranchState& state, const XXModel& model,
                                double horizon, int samples, ExecMode mode) {
    if (samples < 2) throw std::domain_error("need at least 2 samples");
    if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
    auto prop = PropagatorCache::global().get(model, state.e());
    VolumeTrace trace;
    trace.horizon = horizon;
    trace.times.resize(samples);
    trace.samples.resize(samples);
    for (int j = 0; j < samples; ++j)
        trace.times[j] = horizon * j / static_cast<double>(samples - 1);

    if (mode == ExecMode::serial) {
        for (int j = 0; j < samples; ++j)
            trace.samples[j] = closed_sample(state, *prop, trace.times[j]);
    } else {
#pragma omp parallel for schedule(static) num_threads(thread_budget())
        for (int j = 0; j < samples; ++j)
            trace.samples[j] = closed_sample(state, *prop, trace.times[j]);
    }
    return trace;
}

VolumeTrace open_volume_trace(const OpenSystemParams& params, ExecMode mode) {
    if (params.samples < 2) throw std::domain_error("need at least 2 samples");
    if (!(params.horizon > 0.0)) throw std::domain_error("horizon must be positive");
    VolumeTrace trace;
    trace.horizon = params.horizon;
    trace.times.resize(params.samples);
    trace.samples.resize(params.samples);
    for (int j = 0; j < params.samples; ++j)
        trace.times[j] = params.horizon * j / static_cast<double>(params.samples - 1);

    if (mode == ExecMode::serial) {
        for (int j = 0; j < params.samples; ++j)
            trace.samples[j] = open_sample(params.theta, trace.times[j]);
    } else {
#pragma omp parallel for schedule(static) num_threads(thread_budget())
        for (int j = 0; j < params.samples; ++j)
            trace.samples[j] = open_sample(params.theta, trace.times[j]);
    }
    return trace;
}

PhaseDiagramGrid phase_diagram(const PhaseDiagramConfig& config, ExecMode mode) {
    PhaseDiagramGrid grid;
    grid.n_axis = config.n_axis.empty() ? default_n_axis() : config.n_axis;
    grid.theta_axis = config.theta_axis.empty() ? default_theta_axis() : config.theta_axis;
    if (config.family == CoefficientFamily::custom && !config.custom_coeffs)
        throw std::domain_error("custom family needs a coefficient callback");

    const int nt = static_cast<int>(grid.theta_axis.size());
    const int cells = static_cast<int>(grid.n_axis.size()) * nt;
    grid.cells.resize(cells);

    // Cells are independent; indexed writes keep the n-major, theta-minor
    // layout identical in both modes.
    if (mode == ExecMode::serial) {
        for (int c = 0; c < cells; ++c)
            grid.cells[c] = phase_cell(config, grid.n_axis[c / nt], grid.theta_axis[c % nt]);
    } else {
#pragma omp parallel for schedule(dynamic) num_threads(thread_budget())
        for (int c = 0; c < cells; ++c)
            grid.cells[c] = phase_cell(config, grid.n_axis[c / nt], grid.theta_axis[c % nt]);
    }
    return grid;
}

}  // namespace entvol
