#include "entvol/xx_dynamics.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace entvol {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Modes of the open chain restricted to one excitation, in sector (lex)
// indexing: the string 2^i puts the excitation at position p = n - i.
void analytic_single_excitation_modes(const XXModel& model,
                                      Eigen::VectorXd& energies,
                                      Eigen::MatrixXd& modes) {
    int n = model.n;
    double norm = std::sqrt(2.0 / (n + 1));
    energies.resize(n);
    modes.resize(n, n);
    for (int m = 1; m <= n; ++m) {
        energies(m - 1) = 4.0 * model.coupling * std::cos(m * std::numbers::pi / (n + 1));
        for (int i = 0; i < n; ++i) {
            int p = n - i;
            modes(i, m - 1) = norm * std::sin(p * m * std::numbers::pi / (n + 1));
        }
    }
}

}  // namespace

Eigen::MatrixXd sector_hamiltonian(const XXModel& model, int e) {
    SectorBasis basis(model.n, e);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    // sx sx + sy sy moves one excitation across a bond: 2J between strings
    // differing by an adjacent 10 <-> 01 swap.
    for (int i = 0; i < basis.size(); ++i) {
        std::uint32_t s = basis.string_at(i);
        for (int site = 0; site + 1 < model.n; ++site) {
            std::uint32_t pair = 0b11u << (model.n - 2 - site);
            std::uint32_t bits = s & pair;
            if (bits != 0 && bits != pair) {
                int j = basis.index_of(s ^ pair);
                h(i, j) = 2.0 * model.coupling;
            }
        }
    }
    return h;
}

Eigen::MatrixXcd single_excitation_propagator(const XXModel& model, double t) {
    int n = model.n;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        double ek = 4.0 * model.coupling * std::cos(k * std::numbers::pi / (n + 1));
        std::complex<double> phase = std::exp(-kI * ek * t);
        for (int row = 1; row <= n; ++row)
            for (int col = 1; col <= n; ++col)
                g(row - 1, col - 1) += 2.0 / (n + 1) * phase *
                                       std::sin(row * k * std::numbers::pi / (n + 1)) *
                                       std::sin(col * k * std::numbers::pi / (n + 1));
    }
    return g;
}

SectorPropagator::SectorPropagator(const XXModel& model, int e)
    : basis_(model.n, e) {
    if (e == 1) {
        analytic_single_excitation_modes(model, energies_, modes_);
    } else if (e == 0 || e == model.n) {
        energies_ = Eigen::VectorXd::Zero(1);
        modes_ = Eigen::MatrixXd::Identity(1, 1);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_hamiltonian(model, e));
        energies_ = es.eigenvalues();
        modes_ = es.eigenvectors();
    }
}

Eigen::VectorXcd SectorPropagator::advance(const Eigen::VectorXcd& a0, double t) const {
    Eigen::VectorXcd mode_amps = modes_.transpose() * a0;
    for (int i = 0; i < mode_amps.size(); ++i)
        mode_amps(i) *= std::exp(-kI * energies_(i) * t);
    return modes_ * mode_amps;
}

struct PropagatorCache::Impl {
    std::mutex mu;
    std::map<std::tuple<int, int, double>, std::shared_ptr<const SectorPropagator>> memo;
};

PropagatorCache::PropagatorCache() : impl_(std::make_shared<Impl>()) {}

PropagatorCache& PropagatorCache::global() {
    static PropagatorCache cache;
    return cache;
}

std::shared_ptr<const SectorPropagator> PropagatorCache::get(const XXModel& model, int e) {
    std::tuple<int, int, double> key{model.n, e, model.coupling};
    {
        std::lock_guard lock(impl_->mu);
        auto it = impl_->memo.find(key);
        if (it != impl_->memo.end()) return it->second;
    }
    // Diagonalize outside the lock; losers of the race adopt the stored copy.
    auto fresh = std::make_shared<const SectorPropagator>(model, e);
    std::lock_guard lock(impl_->mu);
    auto [it, inserted] = impl_->memo.emplace(key, std::move(fresh));
    return it->second;
}

TwoBranchState evolve(const TwoBranchState& state, const XXModel& model, double t) {
    if (model.n != state.n())
        throw std::domain_error("model and state disagree on qubit count");
    auto prop = PropagatorCache::global().get(model, state.e());
    TwoBranchState out = state;
    out.amps = prop->advance(state.amps, t);
    return out;
}

BranchTrace evolve_trace(const TwoBranchState& state, const XXModel& model,
                         double horizon, int samples) {
    if (samples < 2) throw std::domain_error("need at least 2 samples");
    if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
    auto prop = PropagatorCache::global().get(model, state.e());
    BranchTrace trace;
    trace.horizon = horizon;
    trace.states.reserve(samples);
    for (int j = 0; j < samples; ++j) {
        double t = horizon * j / static_cast<double>(samples - 1);
        TwoBranchState s = state;
        s.amps = prop->advance(state.amps, t);
        trace.states.push_back(std::move(s));
    }
    return trace;
}

double energy_expectation(const TwoBranchState& state, const XXModel& model) {
    Eigen::MatrixXd h = sector_hamiltonian(model, state.e());
    double c = std::cos(state.theta);
    return c * c * state.amps.dot(h * state.amps).real();
}

}  // namespace entvol
