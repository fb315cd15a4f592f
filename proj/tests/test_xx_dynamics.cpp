#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "entvol/rng.hpp"
#include "entvol/xx_dynamics.hpp"

using namespace entvol;

TEST_CASE("sector hamiltonian matrix elements") {
    Eigen::MatrixXd h31 = sector_hamiltonian({3, 1.0}, 1);
    Eigen::MatrixXd want(3, 3);
    want << 0, 2, 0, 2, 0, 2, 0, 2, 0;
    CHECK((h31 - want).cwiseAbs().maxCoeff() < 1e-15);

    Eigen::MatrixXd h21 = sector_hamiltonian({2, 1.0}, 1);
    CHECK(h21(0, 1) == doctest::Approx(2.0));
    CHECK(h21(1, 0) == doctest::Approx(2.0));
    CHECK(h21(0, 0) == 0.0);

    SUBCASE("full and empty sectors are stationary") {
        for (int n : {2, 4, 6}) {
            CHECK(sector_hamiltonian({n, 1.3}, n).cwiseAbs().maxCoeff() == 0.0);
            CHECK(sector_hamiltonian({n, 1.3}, 0).cwiseAbs().maxCoeff() == 0.0);
        }
    }

    SUBCASE("coupling scales linearly") {
        CHECK((sector_hamiltonian({4, 2.5}, 2) - 2.5 * sector_hamiltonian({4, 1.0}, 2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }

    SUBCASE("hermitian in every sector") {
        for (int e = 0; e <= 5; ++e) {
            Eigen::MatrixXd h = sector_hamiltonian({5, 0.7}, e);
            CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("single-excitation spectrum is the standing-wave ladder") {
    for (int n = 2; n <= 10; ++n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_hamiltonian({n, 1.0}, 1));
        Eigen::VectorXd up = es.eigenvalues();  // ascending
        for (int k = 1; k <= n; ++k) {
            double want = 4.0 * std::cos(k * std::numbers::pi / (n + 1));
            CHECK(std::abs(up(n - k) - want) < 1e-10);
        }
    }
}

TEST_CASE("single-excitation propagator closed form") {
    SUBCASE("identity at t = 0") {
        Eigen::MatrixXcd g = single_excitation_propagator({5, 1.0}, 0.0);
        CHECK((g - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("two sites rotate at rate 2J") {
        for (double t : {0.17, 0.8, 2.4}) {
            Eigen::MatrixXcd g = single_excitation_propagator({2, 1.0}, t);
            CHECK(std::abs(g(0, 0) - std::complex<double>{std::cos(2 * t), 0}) < 1e-12);
            CHECK(std::abs(g(0, 1) - std::complex<double>{0, -std::sin(2 * t)}) < 1e-12);
            CHECK(std::abs(g(1, 0) - g(0, 1)) < 1e-12);
        }
    }

    SUBCASE("matches dense exponentiation for n = 3") {
        // positions and sector strings are reverse-ordered; compare through it
        SectorBasis basis(3, 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector_hamiltonian({3, 1.0}, 1));
        double t = 0.83;
        Eigen::MatrixXcd exp_h =
            es.eigenvectors().cast<std::complex<double>>() *
            (Eigen::VectorXcd(
                 (-std::complex<double>{0, 1} * t * es.eigenvalues().cast<std::complex<double>>())
                     .array()
                     .exp()))
                .asDiagonal() *
            es.eigenvectors().transpose().cast<std::complex<double>>();
        Eigen::MatrixXcd g = single_excitation_propagator({3, 1.0}, t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // lex index i holds the excitation at position 3 - i
                CHECK(std::abs(g(2 - i, 2 - j) - exp_h(i, j)) < 1e-10);
            }
    }

    SUBCASE("unitarity and group property") {
        for (int n : {2, 5, 10}) {
            Eigen::MatrixXcd g1 = single_excitation_propagator({n, 1.0}, 0.9);
            Eigen::MatrixXcd g2 = single_excitation_propagator({n, 1.0}, 1.7);
            Eigen::MatrixXcd g12 = single_excitation_propagator({n, 1.0}, 2.6);
            CHECK((g1 * g1.adjoint() - Eigen::MatrixXcd::Identity(n, n))
                      .cwiseAbs()
                      .maxCoeff() < 1e-9);
            CHECK((g1 * g2 - g12).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("evolve preserves structure") {
    Eigen::VectorXcd head(3);
    head << 1.0, 0.0, 0.0;
    TwoBranchState s0 = make_two_branch(3, 1, head, 0.3, 0.7);
    XXModel model{3, 1.0};

    SUBCASE("t = 0 is the identity") {
        TwoBranchState s = evolve(s0, model, 0.0);
        CHECK((s.amps - s0.amps).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(s.theta == s0.theta);
        CHECK(s.phi == s0.phi);
    }

    SUBCASE("unit sector norm along the way") {
        for (double t : {0.3, 1.7, 6.4, 9.9})
            CHECK(evolve(s0, model, t).sector_norm2() ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("amplitudes follow the propagator, reverse-indexed") {
        double t = 1.234;
        TwoBranchState s = evolve(s0, model, t);
        Eigen::MatrixXcd g = single_excitation_propagator(model, t);
        // |001> holds the excitation at position 3 = lex index 0
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(s.amps(i) - g(3 - 1 - i, 2)) < 1e-12);
    }

    SUBCASE("model mismatch is rejected") {
        CHECK_THROWS_AS(evolve(s0, XXModel{4, 1.0}, 1.0), std::domain_error);
    }
}

TEST_CASE("general-sector evolution conserves energy and norm") {
    InstanceGenerator gen(21);
    for (int trial = 0; trial < 8; ++trial) {
        TwoBranchState s0 = gen.random_two_branch(3, 8);
        XXModel model{s0.n(), 1.0};
        double e0 = energy_expectation(s0, model);
        for (double t : {0.5, 3.3, 8.8}) {
            TwoBranchState s = evolve(s0, model, t);
            CHECK(std::abs(energy_expectation(s, model) - e0) < 1e-9);
            CHECK(std::abs(s.sector_norm2() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("evolve_trace grid contract") {
    TwoBranchState s0 =
        make_two_branch(4, 2, Eigen::VectorXcd::Ones(6), 0.4, 0.0);
    XXModel model{4, 1.0};
    BranchTrace trace = evolve_trace(s0, model, 10.0, 101);
    REQUIRE(trace.states.size() == 101);
    CHECK((trace.states.front().amps - s0.amps).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(trace.time_at(1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(trace.time_at(100) == 10.0);
    double drift = 0.0;
    for (const auto& s : trace.states)
        drift = std::max(drift, std::abs(s.sector_norm2() - 1.0));
    CHECK(drift < 1e-9);

    CHECK_THROWS_AS(evolve_trace(s0, model, 10.0, 1), std::domain_error);
    CHECK_THROWS_AS(evolve_trace(s0, model, -1.0, 11), std::domain_error);
}

TEST_CASE("propagator cache is a transparent memo") {
    XXModel model{6, 1.0};
    auto a = PropagatorCache::global().get(model, 2);
    auto b = PropagatorCache::global().get(model, 2);
    CHECK(a.get() == b.get());

    SUBCASE("eigenpairs satisfy the defining equations") {
        Eigen::MatrixXd h = sector_hamiltonian(model, 2);
        const Eigen::MatrixXd& v = a->modes();
        CHECK((v * v.transpose() - Eigen::MatrixXd::Identity(v.rows(), v.rows()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        for (int i = 0; i < v.cols(); ++i)
            CHECK((h * v.col(i) - a->energies()(i) * v.col(i)).cwiseAbs().maxCoeff() <
                  1e-10);
    }

    SUBCASE("concurrent lookups share one instance") {
        std::shared_ptr<const SectorPropagator> seen[4];
        std::thread workers[4];
        for (int i = 0; i < 4; ++i)
            workers[i] = std::thread([&, i] {
                seen[i] = PropagatorCache::global().get(XXModel{7, 1.0}, 3);
            });
        for (auto& w : workers) w.join();
        for (int i = 1; i < 4; ++i) CHECK(seen[i].get() == seen[0].get());
    }

    SUBCASE("analytic single-excitation modes diagonalize the sector matrix") {
        auto p = PropagatorCache::global().get(XXModel{5, 1.0}, 1);
        Eigen::MatrixXd h = sector_hamiltonian({5, 1.0}, 1);
        const Eigen::MatrixXd& v = p->modes();
        CHECK((v * v.transpose() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <
              1e-10);
        for (int i = 0; i < 5; ++i)
            CHECK((h * v.col(i) - p->energies()(i) * v.col(i)).cwiseAbs().maxCoeff() <
                  1e-10);
    }
}
