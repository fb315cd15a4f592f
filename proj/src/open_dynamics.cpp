#include "entvol/open_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entvol/entanglement.hpp"

namespace entvol {

DampingPair damping_amplitudes(double kappa, double t) {
    if (t < 0.0) throw std::domain_error("time must be non-negative");
    double decay = std::exp(-kappa * t);
    return {std::sqrt(decay), std::sqrt(1.0 - decay)};
}

FullState ccrr_state(double theta, double xi, double chi) {
    if (std::abs(xi * xi + chi * chi - 1.0) > 1e-9)
        throw std::domain_error("damping amplitudes must satisfy xi^2 + chi^2 = 1");
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12))
        throw std::domain_error("theta must lie in [0, pi/2]");
    FullState f;
    f.n = 4;
    f.amps = Eigen::VectorXcd::Zero(16);
    double c = std::cos(theta);
    f.amps(0b0000) = std::sin(theta);
    f.amps(0b0011) = c * chi * chi;
    f.amps(0b1100) = c * xi * xi;
    f.amps(0b1001) = c * chi * xi;
    f.amps(0b0110) = c * chi * xi;
    return f;
}

std::vector<FullState> evolve_open(const OpenSystemParams& params) {
    if (params.samples < 2) throw std::domain_error("need at least 2 samples");
    if (!(params.kappa > 0.0)) throw std::domain_error("kappa must be positive");
    if (!(params.horizon > 0.0)) throw std::domain_error("horizon must be positive");
    std::vector<FullState> out;
    out.reserve(params.samples);
    for (int j = 0; j < params.samples; ++j) {
        double kt = params.horizon * j / static_cast<double>(params.samples - 1);
        auto [xi, chi] = damping_amplitudes(params.kappa, kt / params.kappa);
        out.push_back(ccrr_state(params.theta, xi, chi));
    }
    return out;
}

TwoBranchState open_flipped_two_branch(double theta, double xi, double chi) {
    // Flipping all four qubits sends the trajectory into the two-branch
    // family: the 0000 component becomes the all-ones branch and the
    // weight-2 strings land in the e = 2 sector of n = 4.
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(6);
    SectorBasis basis(4, 2);
    coeffs(basis.index_of(0b1100)) = chi * chi;  // 0011 flipped
    coeffs(basis.index_of(0b0011)) = xi * xi;    // 1100 flipped
    coeffs(basis.index_of(0b0110)) = chi * xi;   // 1001 flipped
    coeffs(basis.index_of(0b1001)) = chi * xi;   // 0110 flipped
    return make_two_branch(4, 2, coeffs, theta, 0.0);
}

double open_volume(double theta, double kappa, double t) {
    auto [xi, chi] = damping_amplitudes(kappa, t);
    return entanglement_volume(ccrr_state(theta, xi, chi)).y_s;
}

}  // namespace entvol
