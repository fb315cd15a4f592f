#include <chrono>
#include <cstdio>
#include <numbers>

#include "entvol/kernels.hpp"

using namespace entvol;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

bool identical(const VolumeTrace& a, const VolumeTrace& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t j = 0; j < a.samples.size(); ++j) {
        if (a.samples[j].y_s != b.samples[j].y_s) return false;
        if (a.samples[j].case_label != b.samples[j].case_label) return false;
        for (int k = 0; k < a.samples[j].y_per_qubit.size(); ++k)
            if (a.samples[j].y_per_qubit(k) != b.samples[j].y_per_qubit(k)) return false;
    }
    return true;
}

bool identical(const PhaseDiagramGrid& a, const PhaseDiagramGrid& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
        if (a.cells[c].r_f != b.cells[c].r_f) return false;
        if (a.cells[c].frozen_value.has_value() != b.cells[c].frozen_value.has_value())
            return false;
        if (a.cells[c].frozen_value &&
            *a.cells[c].frozen_value != *b.cells[c].frozen_value)
            return false;
    }
    return true;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-26s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                match ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
    std::printf("thread budget: %d\n", thread_budget());
    bool all_match = true;

    {
        TwoBranchState state = make_two_branch(
            11, 2, family_coefficients(CoefficientFamily::symmetric_W, 11, 2),
            std::numbers::pi / 5, 0.0);
        XXModel model{11, 1.0};
        auto t0 = clock_type::now();
        VolumeTrace serial = closed_volume_trace(state, model, 10.0, 4001, ExecMode::serial);
        double serial_ms = ms_since(t0);
        t0 = clock_type::now();
        VolumeTrace parallel = closed_volume_trace(state, model, 10.0, 4001, ExecMode::parallel);
        double parallel_ms = ms_since(t0);
        bool match = identical(serial, parallel);
        all_match = all_match && match;
        report("closed trace n=11 e=2", serial_ms, parallel_ms, match);
    }

    {
        OpenSystemParams params{0.15 * std::numbers::pi, 1.0, 10.0, 200001};
        auto t0 = clock_type::now();
        VolumeTrace serial = open_volume_trace(params, ExecMode::serial);
        double serial_ms = ms_since(t0);
        t0 = clock_type::now();
        VolumeTrace parallel = open_volume_trace(params, ExecMode::parallel);
        double parallel_ms = ms_since(t0);
        bool match = identical(serial, parallel);
        all_match = all_match && match;
        report("open trace 200001 samples", serial_ms, parallel_ms, match);
    }

    {
        PhaseDiagramConfig config;
        config.family = CoefficientFamily::single_head;
        for (int n = 3; n <= 8; ++n) config.n_axis.push_back(n);
        for (int j = 1; j <= 25; ++j)
            config.theta_axis.push_back(j * std::numbers::pi / 52.0);
        config.samples = 1201;
        auto t0 = clock_type::now();
        PhaseDiagramGrid serial = phase_diagram(config, ExecMode::serial);
        double serial_ms = ms_since(t0);
        t0 = clock_type::now();
        PhaseDiagramGrid parallel = phase_diagram(config, ExecMode::parallel);
        double parallel_ms = ms_since(t0);
        bool match = identical(serial, parallel);
        all_match = all_match && match;
        report("phase sweep 6x25 cells", serial_ms, parallel_ms, match);
    }

    return all_match ? 0 : 1;
}
