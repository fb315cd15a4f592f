#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include "entvol/sector_basis.hpp"

namespace entvol {

// Superposition of an e-excitation component and the all-ones string:
//   cos(theta) * sum_p a_p |p> + e^{i phi} sin(theta) |11...1>
// with the a_p normalized to unit sector norm.
struct TwoBranchState {
    std::shared_ptr<const SectorBasis> basis;
    double theta = 0.0;
    double phi = 0.0;
    Eigen::VectorXcd amps;

    int n() const { return basis->n(); }
    int e() const { return basis->e(); }
    double sector_norm2() const { return amps.squaredNorm(); }
};

// Dense amplitude vector over all 2^n strings, indexed by the integer value
// of the string (qubit 1 = most significant bit).
struct FullState {
    int n = 0;
    Eigen::VectorXcd amps;

    double norm2() const { return amps.squaredNorm(); }
};

// Builds a validated state; coefficients are normalized, a zero vector or a
// length mismatch is rejected, theta must lie in [0, pi/2].
TwoBranchState make_two_branch(int n, int e,
                               const Eigen::VectorXcd& coeffs,
                               double theta, double phi);

FullState embed_full(const TwoBranchState& state);

// r_k^2: total weight of sector strings whose qubit k (1-based) is excited.
double qubit_excitation_weight(const TwoBranchState& state, int k);

// All r_k^2 in one sweep over the sector; sums to e.
Eigen::VectorXd excitation_weights(const TwoBranchState& state);

// New state with every qubit flipped (|0><->|1| on all sites).
FullState bit_flipped(const FullState& state);

}  // namespace entvol
