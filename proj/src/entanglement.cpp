#include "entvol/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entvol {

namespace {

void check_normalized(const FullState& state) {
    if (std::abs(state.norm2() - 1.0) > 1e-8)
        throw std::domain_error("state is not normalized");
}

}  // namespace

double single_qubit_purity(const FullState& state, int k) {
    if (k < 1 || k > state.n) throw std::domain_error("qubit index out of range");
    check_normalized(state);
    std::uint32_t mask = 1u << (state.n - k);
    auto dim = static_cast<std::uint32_t>(state.amps.size());
    double p00 = 0.0, p11 = 0.0;
    std::complex<double> coh{0.0, 0.0};
    for (std::uint32_t x = 0; x < dim; ++x) {
        if (x & mask) {
            p11 += std::norm(state.amps(x));
        } else {
            p00 += std::norm(state.amps(x));
            coh += state.amps(x) * std::conj(state.amps(x | mask));
        }
    }
    return p00 * p00 + p11 * p11 + 2.0 * std::norm(coh);
}

double one_to_other_weight(const FullState& state, int k) {
    double purity = single_qubit_purity(state, k);
    double radicand = std::clamp(2.0 * purity - 1.0, 0.0, 1.0);
    return 1.0 - std::sqrt(radicand);
}

VolumeSample entanglement_volume(const FullState& state) {
    check_normalized(state);
    VolumeSample sample;
    sample.y_per_qubit.resize(state.n);
    sample.r_squared.resize(state.n);
    for (int k = 1; k <= state.n; ++k) {
        sample.y_per_qubit(k - 1) = one_to_other_weight(state, k);
        std::uint32_t mask = 1u << (state.n - k);
        auto dim = static_cast<std::uint32_t>(state.amps.size());
        double p11 = 0.0;
        for (std::uint32_t x = 0; x < dim; ++x)
            if (x & mask) p11 += std::norm(state.amps(x));
        sample.r_squared(k - 1) = p11;
    }
    sample.y_s = sample.y_per_qubit.sum();
    return sample;
}

Eigen::VectorXd branch_margins(const TwoBranchState& state) {
    double c = std::cos(state.theta);
    double c2 = std::cos(2.0 * state.theta);
    Eigen::VectorXd w = excitation_weights(state);
    return (2.0 * c * c) * w - Eigen::VectorXd::Constant(w.size(), c2);
}

VolumeSample fast_volume(const TwoBranchState& state) {
    VolumeSample sample;
    sample.r_squared = excitation_weights(state);
    double c = std::cos(state.theta);
    double c2 = std::cos(2.0 * state.theta);
    int n = state.n();
    sample.y_per_qubit.resize(n);
    for (int k = 0; k < n; ++k) {
        double margin = 2.0 * c * c * sample.r_squared(k) - c2;
        sample.y_per_qubit(k) = 1.0 - std::abs(margin);
    }
    sample.y_s = sample.y_per_qubit.sum();
    return sample;
}

}  // namespace entvol
