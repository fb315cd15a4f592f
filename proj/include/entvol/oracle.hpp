#pragma once

#include <Eigen/Dense>

#include "entvol/state.hpp"
#include "entvol/xx_dynamics.hpp"

namespace entvol {

// Brute-force verification path. Nothing here shares propagator or volume
// code with the sector machinery; the point is an independent route to the
// same numbers.

// Dense 2^n chain Hamiltonian assembled by scattering the literal two-site
// Pauli block (sx sx + sy sy) over every bond. Throws std::length_error
// beyond the qubit cap.
Eigen::MatrixXd full_hamiltonian(const XXModel& model);

// Exact full-space propagation via one Hermitian eigendecomposition.
class FullPropagator {
public:
    explicit FullPropagator(const XXModel& model);

    FullState advance(const FullState& state, double t) const;
    const Eigen::MatrixXd& hamiltonian() const { return h_; }

private:
    int n_;
    Eigen::MatrixXd h_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd modes_;
};

FullState full_evolve(const FullState& state, const XXModel& model, double t);

struct CrossCheckReport {
    double max_volume_dev = 0.0;     // |Y_s fast - Y_s full| over the grid
    double max_per_qubit_dev = 0.0;  // same per qubit
    double max_amp_dev = 0.0;        // sector amplitudes, both routes
    double max_leakage = 0.0;        // weight outside the two branches
    int samples = 0;
};

// Evolves the same initial state down both routes on a uniform grid and
// reports worst-case deviations. Meaningful for e <= n-2, where the fast
// path claims exactness.
CrossCheckReport cross_check(const TwoBranchState& initial, const XXModel& model,
                             double horizon, int samples);

}  // namespace entvol
