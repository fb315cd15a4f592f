#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "entvol/state.hpp"

namespace entvol {

// Open-boundary XX chain: H = J * sum_{k=1}^{n-1} (sx_k sx_{k+1} + sy_k sy_{k+1}).
struct XXModel {
    int n = 2;
    double coupling = 1.0;  // J
};

// Sector-restricted Hamiltonian: element 2J between strings that differ by an
// adjacent 10<->01 swap, zero elsewhere. Real symmetric; 1x1 zero for e in {0, n}.
Eigen::MatrixXd sector_hamiltonian(const XXModel& model, int e);

// Single-excitation propagator in position indexing (row m, column n, 1-based):
//   G_mn(t) = 2/(N+1) * sum_k exp(-i E_k t) sin(n k pi/(N+1)) sin(m k pi/(N+1)),
//   E_k = 4 J cos(k pi/(N+1)).
Eigen::MatrixXcd single_excitation_propagator(const XXModel& model, double t);

// Diagonalized sector evolution: a(t) = V exp(-i L t) V^T a(0) with V real
// orthogonal. For e = 1 the modes are the analytic standing waves; otherwise
// one Hermitian eigendecomposition of the sector matrix.
class SectorPropagator {
public:
    SectorPropagator(const XXModel& model, int e);

    const SectorBasis& basis() const { return basis_; }
    const Eigen::VectorXd& energies() const { return energies_; }
    const Eigen::MatrixXd& modes() const { return modes_; }

    Eigen::VectorXcd advance(const Eigen::VectorXcd& a0, double t) const;

private:
    SectorBasis basis_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd modes_;
};

// Transparent memo over (n, e, J); concurrent lookups share one instance.
class PropagatorCache {
public:
    static PropagatorCache& global();
    std::shared_ptr<const SectorPropagator> get(const XXModel& model, int e);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    PropagatorCache();
};

// Advances the sector branch; theta and phi are untouched because the
// all-ones string has zero energy.
TwoBranchState evolve(const TwoBranchState& state, const XXModel& model, double t);

struct BranchTrace {
    std::vector<TwoBranchState> states;
    double horizon = 0.0;

    double time_at(int j) const {
        return horizon * j / static_cast<double>(states.size() - 1);
    }
};

// States at t_j = j * horizon/(samples-1), j = 0..samples-1.
BranchTrace evolve_trace(const TwoBranchState& state, const XXModel& model,
                         double horizon, int samples);

// <H> of the full two-branch state (the all-ones branch carries zero energy).
double energy_expectation(const TwoBranchState& state, const XXModel& model);

}  // namespace entvol
