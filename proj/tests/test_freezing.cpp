#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entvol/kernels.hpp"
#include "entvol/rng.hpp"

using namespace entvol;

namespace {

constexpr double kPi = std::numbers::pi;

TwoBranchState head_state(int n, double theta) {
    return make_two_branch(n, 1, family_coefficients(CoefficientFamily::single_head, n, 1),
                           theta, 0.0);
}

}  // namespace

TEST_CASE("case condition") {
    TwoBranchState w = make_two_branch(3, 1, Eigen::VectorXcd::Ones(3), 0.0, 0.0);
    CHECK(case_condition(w) == CaseLabel::case2);  // margins all -1/3

    TwoBranchState head = head_state(3, 0.0);
    CHECK(case_condition(head) == CaseLabel::none);  // margins +1, -1, -1

    TwoBranchState third = head_state(3, kPi / 3);
    CHECK(case_condition(third) == CaseLabel::case1);  // cos 2theta < 0

    SUBCASE("ties go to case 1") {
        // e = 0 at theta = pi/4: every margin is exactly zero
        TwoBranchState ghz =
            make_two_branch(3, 0, Eigen::VectorXcd::Ones(1), kPi / 4, 0.0);
        CHECK(case_condition(ghz) == CaseLabel::case1);
    }
}

TEST_CASE("closed-form frozen values") {
    auto [c1, c2] = predicted_frozen_values(3, 1, 0.0);
    CHECK(c1 == doctest::Approx(4.0));
    CHECK(c2 == doctest::Approx(2.0));

    for (int n : {3, 5, 8}) {
        auto [q1, q2] = predicted_frozen_values(n, 1, kPi / 4);
        CHECK(q1 == doctest::Approx(n - 1.0).epsilon(1e-14));
        CHECK(q2 == doctest::Approx(n + 1.0).epsilon(1e-14));
    }

    auto [h1, h2] = predicted_frozen_values(6, 2, kPi / 2);
    CHECK(h1 == doctest::Approx(0.0));
    CHECK(h2 == doctest::Approx(12.0));
}

TEST_CASE("conditional detector on the head state") {
    XXModel model{3, 1.0};

    SUBCASE("theta = pi/3 freezes permanently with the analytic certificate") {
        BranchTrace trace = evolve_trace(head_state(3, kPi / 3), model, 10.0, 501);
        FreezeReport report = detect_freezing_conditional(trace, model);
        CHECK(report.classification == Classification::permanent);
        CHECK(report.certificate == Certificate::analytic);
        CHECK(report.r_f == doctest::Approx(1.0));
        REQUIRE(report.intervals.size() == 1);
        CHECK(report.intervals[0].frozen_value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(report.intervals[0].mechanism == Mechanism::case1);
    }

    SUBCASE("theta = 0 shows the nine case-2 plateaus") {
        BranchTrace trace = evolve_trace(head_state(3, 0.0), model, 10.0, 2001);
        FreezeReport report = detect_freezing_conditional(trace, model);
        CHECK(report.classification == Classification::temporary);
        CHECK(report.certificate == Certificate::grid);
        REQUIRE(report.intervals.size() == 9);
        for (const auto& iv : report.intervals) {
            CHECK(iv.mechanism == Mechanism::case2);
            CHECK(iv.frozen_value == doctest::Approx(2.0).epsilon(1e-12));
            CHECK(iv.t_start < iv.t_end);
        }
        CHECK(report.r_f > 0.0);
        CHECK(report.r_f < 1.0);
        // first plateau sits where the excitation spreads evenly
        CHECK(report.intervals[0].t_start == doctest::Approx(0.404).epsilon(2e-3));
        CHECK(report.intervals[0].t_end == doctest::Approx(0.706).epsilon(2e-3));
        CHECK(*report.predicted_case1 == doctest::Approx(4.0));
        CHECK(*report.predicted_case2 == doctest::Approx(2.0));
    }

    SUBCASE("refined boundaries sit on the margin sign change") {
        BranchTrace trace = evolve_trace(head_state(3, 0.0), model, 10.0, 2001);
        FreezeReport report = detect_freezing_conditional(trace, model);
        REQUIRE(!report.intervals.empty());
        auto prop = PropagatorCache::global().get(model, 1);
        TwoBranchState probe = trace.states.front();
        for (double t : {report.intervals[0].t_start, report.intervals[0].t_end}) {
            probe.amps = prop->advance(trace.states.front().amps, t);
            CHECK(branch_margins(probe).maxCoeff() == doctest::Approx(0.0).epsilon(1e-6));
        }
    }

    SUBCASE("theta = pi/2 is trivially frozen at zero") {
        BranchTrace trace = evolve_trace(head_state(3, kPi / 2), model, 10.0, 201);
        FreezeReport report = detect_freezing_conditional(trace, model);
        CHECK(report.classification == Classification::permanent);
        REQUIRE(report.intervals.size() == 1);
        CHECK(report.intervals[0].frozen_value == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("cos 2theta <= 0 freezes every ordinary sector permanently") {
    InstanceGenerator gen(41);
    for (int trial = 0; trial < 6; ++trial) {
        int n = gen.uniform_int(3, 7);
        int e = gen.uniform_int(1, n - 2);
        Eigen::VectorXcd c = gen.coefficients(static_cast<int>(binomial(n, e)));
        double theta = gen.uniform(kPi / 4, kPi / 2);
        TwoBranchState s = make_two_branch(n, e, c, theta, 0.0);
        XXModel model{n, 1.0};
        FreezeReport report =
            detect_freezing_conditional(evolve_trace(s, model, 10.0, 401), model);
        CHECK(report.classification == Classification::permanent);
        CHECK(report.certificate == Certificate::analytic);
        CHECK(report.r_f == doctest::Approx(1.0));
    }
}

TEST_CASE("value detector semantics") {
    auto make_samples = [](const std::vector<double>& ys) {
        std::vector<VolumeSample> samples(ys.size());
        for (std::size_t j = 0; j < ys.size(); ++j) {
            samples[j].t = 0.01 * static_cast<double>(j);
            samples[j].y_s = ys[j];
        }
        return samples;
    };

    SUBCASE("constant trace is one permanent interval") {
        FreezeReport report =
            detect_freezing_value(make_samples(std::vector<double>(50, 1.25)));
        CHECK(report.classification == Classification::permanent);
        REQUIRE(report.intervals.size() == 1);
        CHECK(report.intervals[0].frozen_value == doctest::Approx(1.25));
        CHECK(report.r_f == doctest::Approx(1.0));
    }

    SUBCASE("steep monotone trace has no intervals") {
        std::vector<double> ys(50);
        for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = 0.1 * static_cast<double>(j);
        FreezeReport report = detect_freezing_value(make_samples(ys));
        CHECK(report.intervals.empty());
        CHECK(report.classification == Classification::none);
        CHECK(report.r_f == 0.0);
    }

    SUBCASE("slow drift under the step tolerance is still not a plateau") {
        std::vector<double> ys(200);
        for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = 9e-7 * static_cast<double>(j);
        FreezeReport report = detect_freezing_value(make_samples(ys));
        CHECK(report.intervals.empty());
    }

    SUBCASE("plateau flanked by motion") {
        std::vector<double> ys;
        for (int j = 0; j < 20; ++j) ys.push_back(0.05 * j);
        for (int j = 0; j < 30; ++j) ys.push_back(1.0);
        for (int j = 0; j < 20; ++j) ys.push_back(1.0 - 0.05 * (j + 1));
        FreezeReport report = detect_freezing_value(make_samples(ys));
        REQUIRE(report.intervals.size() == 1);
        CHECK(report.intervals[0].frozen_value == doctest::Approx(1.0));
        CHECK(report.classification == Classification::temporary);
    }

    SUBCASE("min_len must be sane") {
        CHECK_THROWS_AS(
            detect_freezing_value(make_samples(std::vector<double>(10, 0.0)),
                                  FreezeConfig{.min_len = 2}),
            std::domain_error);
    }
}

TEST_CASE("open-system detection") {
    SUBCASE("theta = 0.3 pi is permanent at the case-1 value") {
        OpenSystemParams params{0.3 * kPi, 1.0, 10.0, 2001};
        FreezeReport report = detect_open_freezing(params, {});
        CHECK(report.classification == Classification::permanent);
        CHECK(report.certificate == Certificate::analytic);
        REQUIRE(report.intervals.size() == 1);
        double want = 4.0 * std::pow(std::cos(0.3 * kPi), 2);
        CHECK(report.intervals[0].frozen_value == doctest::Approx(want).epsilon(1e-10));
        CHECK(*report.predicted_case1 == doctest::Approx(want).epsilon(1e-12));
    }

    SUBCASE("theta = 0.15 pi has one finite window") {
        OpenSystemParams params{0.15 * kPi, 1.0, 10.0, 2001};
        FreezeReport report = detect_open_freezing(params, {});
        CHECK(report.classification == Classification::temporary);
        REQUIRE(report.intervals.size() == 1);
        double want = 4.0 * std::pow(std::cos(0.15 * kPi), 2);
        CHECK(report.intervals[0].frozen_value == doctest::Approx(want).epsilon(1e-9));
        // refined window boundaries: xi^2 passes g and 1-g
        double g = std::cos(0.3 * kPi) / (2.0 * std::pow(std::cos(0.15 * kPi), 2));
        CHECK(report.intervals[0].t_start ==
              doctest::Approx(-std::log(1.0 - g)).epsilon(1e-4));
        CHECK(report.intervals[0].t_end == doctest::Approx(-std::log(g)).epsilon(1e-4));
    }

    SUBCASE("small theta never freezes") {
        OpenSystemParams params{0.02, 1.0, 10.0, 2001};
        FreezeReport report = detect_open_freezing(params, {});
        CHECK(report.intervals.empty());
    }
}

TEST_CASE("critical angle bisection") {
    OpenScanConfig config;
    double crit = critical_theta(config, 1e-5);
    CHECK(crit > 0.0);
    CHECK(crit < kPi / 4);
    // the duration floor pins the angle where the window reaches it:
    // -log(cos 2 theta) = min_duration
    double want = 0.5 * std::acos(std::exp(-config.detector.min_duration));
    CHECK(crit == doctest::Approx(want).epsilon(1e-3));

    SUBCASE("stable under a tighter value tolerance") {
        OpenScanConfig tight = config;
        tight.detector.value_tol /= 2;
        CHECK(std::abs(critical_theta(tight, 1e-5) - crit) < 1e-4);
    }
}

TEST_CASE("conditional and value detectors agree on clean plateaus") {
    XXModel model{3, 1.0};
    BranchTrace branch = evolve_trace(head_state(3, 0.0), model, 10.0, 2001);
    FreezeReport conditional = detect_freezing_conditional(branch, model);

    VolumeTrace volume = closed_volume_trace(head_state(3, 0.0), model, 10.0, 2001);
    FreezeReport value = detect_freezing_value(volume.samples);

    REQUIRE(conditional.intervals.size() == value.intervals.size());
    double step = 10.0 / 2000.0;
    for (std::size_t i = 0; i < value.intervals.size(); ++i) {
        CHECK(std::abs(conditional.intervals[i].t_start - value.intervals[i].t_start) <=
              2 * step);
        CHECK(std::abs(conditional.intervals[i].t_end - value.intervals[i].t_end) <=
              2 * step);
        CHECK(std::abs(conditional.intervals[i].frozen_value -
                       value.intervals[i].frozen_value) < 1e-9);
    }
}

TEST_CASE("e = n-1 candidates need a confirmed constant volume") {
    InstanceGenerator gen(42);
    for (int n : {3, 4}) {
        Eigen::VectorXcd c = gen.coefficients(static_cast<int>(binomial(n, n - 1)));
        for (double theta : {0.3, 0.9, 1.1}) {
            TwoBranchState s = make_two_branch(n, n - 1, c, theta, 0.0);
            XXModel model{n, 1.0};
            FreezeReport report =
                detect_freezing_conditional(evolve_trace(s, model, 10.0, 1001), model);
            CHECK(report.intervals.empty());
            CHECK(report.classification == Classification::none);
            CHECK(report.certificate == Certificate::grid);
        }
    }

    SUBCASE("a genuinely stationary e = n-1 state is confirmed") {
        // distribute the hole over one standing-wave mode: an eigenstate, so
        // every weight is constant and the whole horizon is one interval
        XXModel model{3, 1.0};
        auto hole_prop = PropagatorCache::global().get(model, 2);
        Eigen::VectorXcd c = hole_prop->modes().col(0).cast<std::complex<double>>();
        TwoBranchState s = make_two_branch(3, 2, c, 0.9, 0.0);
        FreezeReport report =
            detect_freezing_conditional(evolve_trace(s, model, 10.0, 501), model);
        CHECK(report.classification == Classification::permanent);
        REQUIRE(report.intervals.size() == 1);
        CHECK(report.intervals[0].mechanism == Mechanism::value_plateau);
        CHECK(report.intervals[0].frozen_value ==
              doctest::Approx(entanglement_volume(embed_full(s)).y_s).epsilon(1e-9));
    }
}

TEST_CASE("phase diagram structure on a small grid") {
    PhaseDiagramConfig config;
    config.n_axis = {3, 4, 5};
    for (int j = 1; j <= 9; ++j) config.theta_axis.push_back(j * kPi / 20.0);
    config.samples = 801;

    SUBCASE("single head: permanence beyond pi/4") {
        config.family = CoefficientFamily::single_head;
        PhaseDiagramGrid grid = phase_diagram(config);
        REQUIRE(grid.cells.size() == 27);
        for (std::size_t ni = 0; ni < grid.n_axis.size(); ++ni)
            for (std::size_t ti = 0; ti < grid.theta_axis.size(); ++ti) {
                const PhaseCell& cell = grid.at(static_cast<int>(ni), static_cast<int>(ti));
                CHECK(cell.n == grid.n_axis[ni]);
                CHECK(cell.theta == grid.theta_axis[ti]);
                if (grid.theta_axis[ti] >= kPi / 4) {
                    CHECK(cell.classification == Classification::permanent);
                    CHECK(cell.r_f == doctest::Approx(1.0));
                    double want = 2.0 * (cell.n - 1) * std::pow(std::cos(cell.theta), 2);
                    CHECK(*cell.frozen_value == doctest::Approx(want).epsilon(1e-9));
                }
            }
    }

    SUBCASE("symmetric W never leaves an empty cell") {
        config.family = CoefficientFamily::symmetric_W;
        PhaseDiagramGrid grid = phase_diagram(config);
        for (const PhaseCell& cell : grid.cells) {
            CHECK(cell.frozen_value.has_value());
            CHECK(cell.r_f > 0.0);
        }
    }
}
