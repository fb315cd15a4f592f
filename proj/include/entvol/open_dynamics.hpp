#pragma once

#include <vector>

#include "entvol/state.hpp"

namespace entvol {

// Two cavities, each leaking into its own vacuum reservoir taken in the
// infinite-mode limit; the reservoir collective mode acts as one effective
// qubit, giving a 4-qubit trajectory in the ordering c1 c2 r1 r2.
struct OpenSystemParams {
    double theta = 0.0;
    double kappa = 1.0;
    double horizon = 10.0;  // in units of kappa*t
    int samples = 2001;
};

struct DampingPair {
    double xi;   // surviving cavity amplitude, e^{-kappa t / 2}
    double chi;  // transferred amplitude, sqrt(1 - e^{-kappa t})
};

DampingPair damping_amplitudes(double kappa, double t);

// Amplitudes: sin(theta) on 0000, cos(theta)*chi^2 on 0011, cos(theta)*xi^2
// on 1100, cos(theta)*chi*xi on 1001 and 0110; zero elsewhere.
FullState ccrr_state(double theta, double xi, double chi);

std::vector<FullState> evolve_open(const OpenSystemParams& params);

// The same state after a global bit flip, expressed in the two-branch family
// (n = 4, e = 2); lets the closed-form freezing machinery run on it.
TwoBranchState open_flipped_two_branch(double theta, double xi, double chi);

// Y_s at one instant via the generic partial-trace path.
double open_volume(double theta, double kappa, double t);

}  // namespace entvol
