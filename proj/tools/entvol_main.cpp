#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "entvol/io.hpp"
#include "entvol/oracle.hpp"
#include "entvol/rng.hpp"

namespace {

using namespace entvol;

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Eigen::VectorXcd resolve_coeffs(const std::string& spec, int n, int e) {
    if (spec == "single_head")
        return family_coefficients(CoefficientFamily::single_head, n, e);
    if (spec == "symmetric_W")
        return family_coefficients(CoefficientFamily::symmetric_W, n, e);
    return load_coefficient_file(spec);
}

struct EvolveArgs {
    int n = 3, e = 1;
    std::string theta = "0", phi = "0", coeffs = "single_head";
    double coupling = 1.0, horizon = 10.0;
    int samples = 2001;
    std::string out_dir = ".";
    FreezeConfig detector;
};

int run_evolve(const EvolveArgs& args) {
    TwoBranchState state = make_two_branch(args.n, args.e,
                                           resolve_coeffs(args.coeffs, args.n, args.e),
                                           parse_angle(args.theta),
                                           parse_angle(args.phi));
    XXModel model{args.n, args.coupling};
    VolumeTrace trace =
        closed_volume_trace(state, model, args.horizon, args.samples);
    BranchTrace branch = evolve_trace(state, model, args.horizon, args.samples);
    FreezeReport report = detect_freezing_conditional(branch, model, args.detector);

    std::filesystem::create_directories(args.out_dir);
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file(std::filesystem::path(args.out_dir) / "trace.csv", csv.str());

    nlohmann::json config{{"command", "evolve"},
                          {"n", args.n},
                          {"e", args.e},
                          {"theta", parse_angle(args.theta)},
                          {"phi", parse_angle(args.phi)},
                          {"coeffs", args.coeffs},
                          {"coupling", args.coupling},
                          {"horizon", args.horizon},
                          {"samples", args.samples},
                          {"margin_tol", args.detector.margin_tol},
                          {"value_tol", args.detector.value_tol},
                          {"min_len", args.detector.min_len}};
    write_file(std::filesystem::path(args.out_dir) / "report.json",
               freeze_report_json(report, config).dump(2) + "\n");
    return 0;
}

struct OpenArgs {
    std::string theta = "0";
    double kappa = 1.0, horizon = 10.0;
    int samples = 2001;
    std::string out_dir = ".";
    FreezeConfig detector;
    bool theta_crit = false;
    double bisection_tol = 1e-5;
    double min_duration = 0.05;  // plateau floor for the critical-angle scan
};

int run_open(const OpenArgs& args) {
    OpenSystemParams params{parse_angle(args.theta), args.kappa, args.horizon,
                            args.samples};
    VolumeTrace trace = open_volume_trace(params);
    FreezeReport report = detect_open_freezing(params, args.detector);

    std::filesystem::create_directories(args.out_dir);
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file(std::filesystem::path(args.out_dir) / "trace.csv", csv.str());

    nlohmann::json config{{"command", "open"},
                          {"theta", params.theta},
                          {"kappa", args.kappa},
                          {"horizon", args.horizon},
                          {"samples", args.samples},
                          {"value_tol", args.detector.value_tol},
                          {"min_len", args.detector.min_len}};
    nlohmann::json doc = freeze_report_json(report, config);

    if (args.theta_crit) {
        OpenScanConfig scan;
        scan.kappa = args.kappa;
        scan.horizon = args.horizon;
        scan.samples = args.samples;
        scan.detector = args.detector;
        scan.detector.min_duration = args.min_duration;
        double crit = critical_theta(scan, args.bisection_tol);
        doc["theta_crit"] = crit;
        std::cout << "theta_crit = " << format_g17(crit) << " rad (bracket width "
                  << format_g17(args.bisection_tol) << ")\n";
    }
    write_file(std::filesystem::path(args.out_dir) / "report.json",
               doc.dump(2) + "\n");
    return 0;
}

struct PhaseArgs {
    std::string family = "single_head";
    int n_min = 3, n_max = 10, theta_steps = 49, e = 1;
    double coupling = 1.0, horizon = 10.0;
    int samples = 2001;
    std::string out = "phase.csv";
    FreezeConfig detector;
};

int run_phase(const PhaseArgs& args) {
    PhaseDiagramConfig config;
    if (args.family == "single_head")
        config.family = CoefficientFamily::single_head;
    else if (args.family == "symmetric_W")
        config.family = CoefficientFamily::symmetric_W;
    else
        throw std::domain_error("unknown family " + args.family);
    for (int n = args.n_min; n <= args.n_max; ++n) config.n_axis.push_back(n);
    for (int j = 1; j <= args.theta_steps; ++j)
        config.theta_axis.push_back(j * std::numbers::pi / (2.0 * (args.theta_steps + 1)));
    config.e = args.e;
    config.coupling = args.coupling;
    config.horizon = args.horizon;
    config.samples = args.samples;
    config.detector = args.detector;

    PhaseDiagramGrid grid = phase_diagram(config);
    std::ostringstream csv;
    write_phase_csv(csv, grid);
    if (auto dir = std::filesystem::path(args.out).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    write_file(args.out, csv.str());
    return 0;
}

struct VerifyArgs {
    int n_max = 8, trials = 20;
    std::uint64_t seed = 20260815;
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    InstanceGenerator gen(args.seed);
    nlohmann::json instances = nlohmann::json::array();
    double worst_volume = 0.0, worst_leak = 0.0;
    bool failed = false;
    for (int trial = 0; trial < args.trials; ++trial) {
        TwoBranchState state = gen.random_two_branch(3, args.n_max);
        XXModel model{state.n(), 1.0};
        CrossCheckReport check = cross_check(state, model, 10.0, 200);
        bool ok = check.max_volume_dev < 1e-8 && check.max_per_qubit_dev < 1e-8 &&
                  check.max_amp_dev < 1e-8 && check.max_leakage < 1e-12;
        instances.push_back({{"trial", trial},
                             {"n", state.n()},
                             {"e", state.e()},
                             {"theta", state.theta},
                             {"max_volume_dev", check.max_volume_dev},
                             {"max_per_qubit_dev", check.max_per_qubit_dev},
                             {"max_amp_dev", check.max_amp_dev},
                             {"max_leakage", check.max_leakage},
                             {"ok", ok}});
        worst_volume = std::max(worst_volume, check.max_volume_dev);
        worst_leak = std::max(worst_leak, check.max_leakage);
        if (!ok) {
            failed = true;
            std::cerr << "deviation beyond tolerance at trial " << trial << ": n="
                      << state.n() << " e=" << state.e() << " theta=" << state.theta
                      << " max_volume_dev=" << check.max_volume_dev
                      << " max_leakage=" << check.max_leakage << "\n";
        }
    }
    nlohmann::json doc{{"generator", InstanceGenerator::algorithm},
                       {"seed", args.seed},
                       {"trials", args.trials},
                       {"n_max", args.n_max},
                       {"volume_tol", 1e-8},
                       {"leakage_tol", 1e-12},
                       {"max_volume_dev", worst_volume},
                       {"max_leakage", worst_leak},
                       {"pass", !failed},
                       {"instances", std::move(instances)}};
    if (!args.out.empty()) {
        write_file(args.out, doc.dump(2) + "\n");
    }
    std::cout << "verify: " << args.trials << " instances, max |dY_s| = "
              << format_g17(worst_volume) << ", max leakage = "
              << format_g17(worst_leak) << (failed ? " [FAIL]" : " [OK]") << "\n";
    return failed ? 1 : 0;
}

void add_detector_flags(CLI::App* cmd, FreezeConfig& detector) {
    cmd->add_option("--margin-tol", detector.margin_tol,
                    "sign tolerance for the case conditions");
    cmd->add_option("--value-tol", detector.value_tol,
                    "absolute plateau tolerance on Y_s");
    cmd->add_option("--min-len", detector.min_len,
                    "minimum samples per plateau (value detector)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excitation-conserving dynamics and entanglement-volume freezing"};
    app.require_subcommand(1);

    EvolveArgs evolve_args;
    auto* evolve = app.add_subcommand(
        "evolve", "two-branch chain trace: trace.csv + report.json");
    evolve->add_option("--n", evolve_args.n, "qubit count")->required();
    evolve->add_option("--e", evolve_args.e, "excitation count")->required();
    evolve->add_option("--theta", evolve_args.theta, "branch angle (radians or e.g. 0.25pi)");
    evolve->add_option("--phi", evolve_args.phi, "branch phase");
    evolve->add_option("--coeffs", evolve_args.coeffs,
                       "single_head | symmetric_W | JSON file of [re,im] pairs");
    evolve->add_option("--coupling", evolve_args.coupling, "chain coupling J");
    evolve->add_option("--horizon", evolve_args.horizon, "evolution horizon");
    evolve->add_option("--samples", evolve_args.samples, "grid samples");
    evolve->add_option("--out-dir", evolve_args.out_dir, "output directory");
    add_detector_flags(evolve, evolve_args.detector);

    OpenArgs open_args;
    auto* open = app.add_subcommand(
        "open", "cavity-reservoir trace: trace.csv + report.json");
    open->add_option("--theta", open_args.theta, "initial mixing angle")->required();
    open->add_option("--kappa", open_args.kappa, "decay rate");
    open->add_option("--horizon", open_args.horizon, "kappa*t range");
    open->add_option("--samples", open_args.samples, "grid samples");
    open->add_option("--out-dir", open_args.out_dir, "output directory");
    open->add_flag("--theta-crit", open_args.theta_crit,
                   "also locate the critical angle by bisection");
    open->add_option("--bisection-tol", open_args.bisection_tol,
                     "bracket width for --theta-crit");
    open->add_option("--min-duration", open_args.min_duration,
                     "plateau duration floor for --theta-crit, in kappa*t");
    add_detector_flags(open, open_args.detector);

    PhaseArgs phase_args;
    auto* phase = app.add_subcommand("phase", "freezing phase diagram CSV");
    phase->add_option("--family", phase_args.family, "single_head | symmetric_W");
    phase->add_option("--n-min", phase_args.n_min, "smallest qubit count");
    phase->add_option("--n-max", phase_args.n_max, "largest qubit count");
    phase->add_option("--theta-steps", phase_args.theta_steps,
                      "theta columns: j*pi/(2(steps+1)), j = 1..steps");
    phase->add_option("--e", phase_args.e, "excitation count");
    phase->add_option("--coupling", phase_args.coupling, "chain coupling J");
    phase->add_option("--horizon", phase_args.horizon, "evolution horizon");
    phase->add_option("--samples", phase_args.samples, "grid samples");
    phase->add_option("--out", phase_args.out, "output CSV path");
    add_detector_flags(phase, phase_args.detector);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "cross-check the fast path against the full-space route");
    verify->add_option("--n-max", verify_args.n_max, "largest qubit count");
    verify->add_option("--trials", verify_args.trials, "instance count");
    verify->add_option("--seed", verify_args.seed, "instance seed");
    verify->add_option("--out", verify_args.out, "verification report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (evolve->parsed()) return run_evolve(evolve_args);
        if (open->parsed()) return run_open(open_args);
        if (phase->parsed()) return run_phase(phase_args);
        return run_verify(verify_args);
    } catch (const std::domain_error& err) {
        std::cerr << "invalid arguments: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "invalid arguments: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
