#pragma once

#include <Eigen/Dense>

#include "entvol/state.hpp"

namespace entvol {

enum class CaseLabel { none = 0, case1 = 1, case2 = 2 };

struct VolumeSample {
    double t = 0.0;
    Eigen::VectorXd y_per_qubit;  // Y_k, one-to-other weight of each qubit
    double y_s = 0.0;             // sum of y_per_qubit
    Eigen::VectorXd r_squared;    // per-qubit excitation weight
    CaseLabel case_label = CaseLabel::none;
};

// Tr rho_k^2 of the 2x2 marginal of qubit k (1-based), by direct partial
// trace. Requires a unit-norm state.
double single_qubit_purity(const FullState& state, int k);

// Normalized Schmidt weight of the k vs rest split:
//   Y_k = 1 - sqrt(clamp(2 Tr rho_k^2 - 1, 0, 1));
// equivalently 1 - sqrt(1 - C_k^2) with concurrence C_k = sqrt(2(1 - Tr rho_k^2)).
double one_to_other_weight(const FullState& state, int k);

// Y_s = sum_k Y_k with per-qubit detail; r_squared holds the excitation
// probability of each qubit. Generic path, any pure state.
VolumeSample entanglement_volume(const FullState& state);

// Per-qubit margins 2 cos^2(theta) r_k^2 - cos(2 theta); their uniform sign
// is what freezes the volume.
Eigen::VectorXd branch_margins(const TwoBranchState& state);

// Algebraic fast path for the two-branch family: Y_k = 1 - |margin_k|.
// Exact for e <= n-2 (and e = n); for e = n-1 the generic path is the
// authority and the two may disagree.
VolumeSample fast_volume(const TwoBranchState& state);

}  // namespace entvol
