#include "entvol/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entvol {

TwoBranchState make_two_branch(int n, int e, const Eigen::VectorXcd& coeffs,
                               double theta, double phi) {
    auto basis = std::make_shared<const SectorBasis>(n, e);
    if (coeffs.size() != basis->size())
        throw std::domain_error("expected " + std::to_string(basis->size()) +
                                " coefficients, got " + std::to_string(coeffs.size()));
    double norm = coeffs.norm();
    if (!(norm > 1e-150))
        throw std::domain_error("coefficient vector is zero");
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12))
        throw std::domain_error("theta must lie in [0, pi/2]");
    TwoBranchState s;
    s.basis = std::move(basis);
    s.theta = theta;
    s.phi = phi;
    s.amps = coeffs / norm;
    return s;
}

FullState embed_full(const TwoBranchState& state) {
    const SectorBasis& b = *state.basis;
    FullState f;
    f.n = b.n();
    f.amps = Eigen::VectorXcd::Zero(1LL << b.n());
    double c = std::cos(state.theta), s = std::sin(state.theta);
    for (int i = 0; i < b.size(); ++i) f.amps(b.string_at(i)) += c * state.amps(i);
    f.amps(b.all_ones()) += s * std::polar(1.0, state.phi);
    return f;
}

double qubit_excitation_weight(const TwoBranchState& state, int k) {
    const SectorBasis& b = *state.basis;
    if (k < 1 || k > b.n()) throw std::domain_error("qubit index out of range");
    double w = 0.0;
    for (int i = 0; i < b.size(); ++i)
        if (b.qubit_set(i, k)) w += std::norm(state.amps(i));
    return w;
}

Eigen::VectorXd excitation_weights(const TwoBranchState& state) {
    const SectorBasis& b = *state.basis;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(b.n());
    for (int i = 0; i < b.size(); ++i) {
        double p = std::norm(state.amps(i));
        std::uint32_t s = b.string_at(i);
        while (s) {
            int bit = std::countr_zero(s);
            w(b.n() - 1 - bit) += p;  // bit position -> qubit index (1-based from left)
            s &= s - 1;
        }
    }
    return w;
}

FullState bit_flipped(const FullState& state) {
    FullState f;
    f.n = state.n;
    std::uint32_t mask = (1u << state.n) - 1u;
    f.amps.resize(state.amps.size());
    for (std::uint32_t x = 0; x <= mask; ++x) f.amps(x ^ mask) = state.amps(x);
    return f;
}

}  // namespace entvol
