#include "entvol/oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "entvol/entanglement.hpp"

namespace entvol {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// sx(x)sx + sy(x)sy as a literal 4x4 block over two adjacent sites,
// basis |00>, |01>, |10>, |11> of the pair.
Eigen::Matrix4d bond_block() {
    Eigen::Matrix2d sx, isy;  // isy = i * sy, keeps the arithmetic real
    sx << 0, 1, 1, 0;
    isy << 0, 1, -1, 0;
    Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
    auto scatter = [&block](const Eigen::Matrix2d& a, const Eigen::Matrix2d& b,
                            double sign) {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                block(r, c) += sign * a(r >> 1, c >> 1) * b(r & 1, c & 1);
    };
    scatter(sx, sx, 1.0);
    scatter(isy, isy, -1.0);  // (i sy)(i sy) = -sy sy
    return block;
}

}  // namespace

Eigen::MatrixXd full_hamiltonian(const XXModel& model) {
    if (model.n < 2 || model.n > kQubitCap)
        throw std::length_error("full-space path supports 2 to " +
                                std::to_string(kQubitCap) + " qubits");
    const std::uint32_t dim = 1u << model.n;
    const Eigen::Matrix4d block = bond_block();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int site = 0; site + 1 < model.n; ++site) {
        int shift = model.n - 2 - site;  // bond acts on bits (shift+1, shift)
        for (std::uint32_t x = 0; x < dim; ++x) {
            std::uint32_t pair_x = (x >> shift) & 0b11u;
            std::uint32_t rest = x & ~(0b11u << shift);
            for (std::uint32_t pair_y = 0; pair_y < 4; ++pair_y) {
                double v = block(pair_y, pair_x);
                if (v != 0.0)
                    h(rest | (pair_y << shift), x) += model.coupling * v;
            }
        }
    }
    return h;
}

FullPropagator::FullPropagator(const XXModel& model)
    : n_(model.n), h_(full_hamiltonian(model)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_);
    energies_ = es.eigenvalues();
    modes_ = es.eigenvectors();
}

FullState FullPropagator::advance(const FullState& state, double t) const {
    if (state.n != n_) throw std::domain_error("state size mismatch");
    Eigen::VectorXcd mode_amps = modes_.transpose() * state.amps;
    for (Eigen::Index i = 0; i < mode_amps.size(); ++i)
        mode_amps(i) *= std::exp(-kI * energies_(i) * t);
    FullState out;
    out.n = n_;
    out.amps = modes_ * mode_amps;
    return out;
}

FullState full_evolve(const FullState& state, const XXModel& model, double t) {
    return FullPropagator(model).advance(state, t);
}

CrossCheckReport cross_check(const TwoBranchState& initial, const XXModel& model,
                             double horizon, int samples) {
    if (samples < 2) throw std::domain_error("need at least 2 samples");
    FullPropagator full(model);
    FullState psi0 = embed_full(initial);
    const int n = initial.n(), e = initial.e();
    const std::uint32_t all_ones = initial.basis->all_ones();

    CrossCheckReport report;
    report.samples = samples;
    for (int j = 0; j < samples; ++j) {
        double t = horizon * j / static_cast<double>(samples - 1);

        FullState psi = full.advance(psi0, t);
        VolumeSample direct = entanglement_volume(psi);

        TwoBranchState branch = evolve(initial, model, t);
        VolumeSample fast = fast_volume(branch);

        report.max_volume_dev =
            std::max(report.max_volume_dev, std::abs(fast.y_s - direct.y_s));
        report.max_per_qubit_dev =
            std::max(report.max_per_qubit_dev,
                     (fast.y_per_qubit - direct.y_per_qubit).cwiseAbs().maxCoeff());
        report.max_amp_dev =
            std::max(report.max_amp_dev,
                     (embed_full(branch).amps - psi.amps).cwiseAbs().maxCoeff());

        auto dim = static_cast<std::uint32_t>(psi.amps.size());
        for (std::uint32_t x = 0; x < dim; ++x) {
            if (std::popcount(x) == e || x == all_ones) continue;
            report.max_leakage = std::max(report.max_leakage, std::abs(psi.amps(x)));
        }
    }
    return report;
}

}  // namespace entvol
