#pragma once

#include <vector>

#include "entvol/freezing.hpp"

namespace entvol {

// Every kernel has a plain serial loop and an OpenMP version that must
// produce bitwise-identical results; samples and grid cells are independent.
enum class ExecMode { serial, parallel };

// OpenMP worker count, capped by the ENTVOL_THREADS environment variable.
int thread_budget();

struct VolumeTrace {
    double horizon = 0.0;
    std::vector<double> times;
    std::vector<VolumeSample> samples;
};

// Volume curve of a two-branch state under the chain model. Uses the fast
// algebraic path except at e = n-1, where the generic reduced-density path is
// the authority; case labels always come from the margins.
VolumeTrace closed_volume_trace(const TwoBranchState& state, const XXModel& model,
                                double horizon, int samples,
                                ExecMode mode = ExecMode::parallel);

// Volume curve of the cavity-reservoir trajectory (generic path; case labels
// via the bit-flipped two-branch form).
VolumeTrace open_volume_trace(const OpenSystemParams& params,
                              ExecMode mode = ExecMode::parallel);

// Full (n, theta) sweep; cells are filled in deterministic n-major,
// theta-minor order whatever the execution mode.
PhaseDiagramGrid phase_diagram(const PhaseDiagramConfig& config,
                               ExecMode mode = ExecMode::parallel);

}  // namespace entvol
