// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: closed-form vs Monte-Carlo rate evaluation, joint
// (Q, Theta) optimization, parameter sweeps with CSV output, and the
// cross-check suite.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 validation failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rismimo/experiment.hpp"
#include "rismimo/matrix_io.hpp"
#include "rismimo/matrix_kernel.hpp"

namespace fs = std::filesystem;
using namespace rismimo;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    long trials = 0;  // 0: use config value
    int workers = 1;
    std::string scheme = "";
    std::string sweep = "";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario configuration file");
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", args.seed, "seed override")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--trials", args.trials, "Monte-Carlo trials override");
    cmd->add_option("--workers", args.workers, "concurrent workers")->capture_default_str();
    cmd->add_option("--scheme", args.scheme, "design scheme(s), comma separated");
}

Scenario load(const CommonArgs& args) {
    Scenario sc = args.config_path.empty() ? load_scenario_text(default_scenario_text())
                                           : load_scenario_file(args.config_path);
    return sc;
}

std::uint64_t effective_seed(const CommonArgs& args, const Scenario& sc) {
    return args.seed_set ? args.seed : sc.channel.seed;
}

long effective_trials(const CommonArgs& args, const Scenario& sc) {
    return args.trials > 0 ? args.trials : sc.channel.mc_trials;
}

std::vector<Scheme> parse_scheme_list(const std::string& arg, std::vector<Scheme> fallback) {
    if (arg.empty()) return fallback;
    std::vector<Scheme> out;
    std::istringstream in(arg);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(parse_scheme(item));
    }
    if (out.empty()) throw ConfigError("scheme", "empty scheme list");
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot write " + path.string());
    out << content;
}

int cmd_rate(const CommonArgs& args) {
    const Scenario sc = load(args);
    const SystemStatistics stats = build_statistics(sc.channel);
    const std::uint64_t seed = effective_seed(args, sc);

    EvalOptions eo;
    eo.trials = effective_trials(args, sc);
    eo.workers = args.workers;
    eo.opt = sc.opt;
    const Scheme scheme =
        parse_scheme_list(args.scheme, {Scheme::kUniformRandom}).front();
    const SchemeEvaluation ev = evaluate_scheme(stats, scheme, seed, eo);

    ResultRow row;
    row.sweep_var = "power_dbm";
    row.sweep_value = sc.channel.p_dbm;
    row.scheme = scheme;
    row.rate_analytic_bits = ev.analytic ? ev.analytic->bits() : NAN;
    row.rate_mc_bits = ev.mc.bits();
    row.rate_mc_stderr = ev.mc.stderr_bits();
    row.outer_iters = ev.outer_iterations;
    row.fp_iters_total = ev.fp_iterations_total;

    fs::create_directories(args.out_dir);
    std::ofstream csv(fs::path(args.out_dir) / "rate.csv");
    csv << kCsvHeader << '\n' << csv_row(row) << '\n';

    std::cout << "scheme:        " << scheme_name(scheme) << "\n";
    if (ev.analytic) {
        std::cout << "rate analytic: " << ev.analytic->bits() << " bits/use\n";
    }
    std::cout << "rate mc:       " << ev.mc.bits() << " +/- " << ev.mc.stderr_bits() << " bits/use ("
              << ev.mc.trials << " trials)\n";
    return 0;
}

int cmd_optimize(const CommonArgs& args) {
    const Scenario sc = load(args);
    const SystemStatistics stats = build_statistics(sc.channel);
    const std::uint64_t seed = effective_seed(args, sc);
    const Scheme scheme = parse_scheme_list(args.scheme, {Scheme::kOptimized}).front();
    if (scheme != Scheme::kOptimized && scheme != Scheme::kNoRis) {
        throw ConfigError("scheme", "optimize supports `optimized` or `no_ris`");
    }

    fs::create_directories(args.out_dir);
    TransmitCovariance q;
    std::vector<double> trace;
    bool theta_relevant = true;
    PhaseVector theta = PhaseVector::flat(stats.dims.l);
    int outer = 0;

    if (scheme == Scheme::kOptimized) {
        EvalOptions eo;
        eo.workers = args.workers;
        eo.opt = sc.opt;
        JointOptOptions jo;
        jo.epsilon = sc.opt.epsilon;
        jo.restarts = sc.opt.restarts;
        jo.max_outer = sc.opt.max_outer;
        jo.covariance.epsilon = sc.opt.epsilon;
        jo.phase.epsilon = sc.opt.epsilon;
        jo.phase.step = sc.opt.phase_step;
        jo.phase.workers = args.workers;
        const JointResult jr = optimize_joint(stats, seed, jo);
        q = jr.q;
        theta = jr.theta;
        trace = jr.rate_trace_nats;
        outer = jr.outer_iterations;
        if (!jr.converged) {
            std::cout << "warning: outer loop hit the iteration cap before converging\n";
        }
    } else {
        const SystemStatistics bare = zero_reflector_links(stats);
        CovarianceOptOptions co;
        co.epsilon = sc.opt.epsilon;
        const CovarianceOptResult cv = optimize_covariance(
            bare, theta, TransmitCovariance::uniform(stats.dims.n, stats.power_budget), co);
        q = cv.q;
        trace = cv.rate_trace_nats;
        outer = cv.iterations;
        theta_relevant = false;
    }

    Eigen::SelfAdjointEigenSolver<CMat> eig((q.q + q.q.adjoint()) / 2.0);
    save_matrix(fs::path(args.out_dir) / "q_eigenvalues.mat",
                eig.eigenvalues().cast<Complex>());
    save_matrix(fs::path(args.out_dir) / "q_eigenvectors.mat", eig.eigenvectors());
    if (theta_relevant) {
        save_matrix(fs::path(args.out_dir) / "theta_angles.mat", theta.angles().cast<Complex>());
    }
    {
        std::ofstream tr(fs::path(args.out_dir) / "rate_trace.csv");
        tr << "iteration,rate_bits\n";
        char buf[40];
        for (size_t i = 0; i < trace.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.10g", i, trace[i] / M_LN2);
            tr << buf << '\n';
        }
    }

    std::cout << "outer iterations: " << outer << "\n";
    std::cout << "final rate:       " << (trace.empty() ? 0.0 : trace.back() / M_LN2)
              << " bits/use\n";
    std::cout << "theta:            "
              << (theta_relevant ? "persisted (theta_angles.mat)"
                                 : "irrelevant (reflector links absent)")
              << "\n";
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const Scenario sc = load(args);
    const std::uint64_t seed = effective_seed(args, sc);
    if (args.sweep.empty()) throw ConfigError("sweep", "missing --sweep <var>=<v1,v2,...>");
    const auto eq = args.sweep.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep", "expected <var>=<v1,v2,...>");

    SweepSpec spec;
    spec.variable = parse_sweep_variable(args.sweep.substr(0, eq));
    std::istringstream vals(args.sweep.substr(eq + 1));
    std::string item;
    while (std::getline(vals, item, ',')) {
        if (item.empty()) continue;
        try {
            spec.values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("sweep.values", "bad numeric value `" + item + "`");
        }
    }
    spec.schemes = parse_scheme_list(
        args.scheme, {Scheme::kOptimized, Scheme::kUniformRandom, Scheme::kNoRis});
    spec.mc_trials = effective_trials(args, sc);

    fs::create_directories(args.out_dir);
    std::ofstream csv(fs::path(args.out_dir) / "sweep.csv");
    const auto rows = run_sweep(sc, spec, seed, args.workers, &csv);
    write_file(fs::path(args.out_dir) / "sweep.json", sweep_metadata_json(spec, sc, seed));

    int failures = 0;
    for (const auto& r : rows) {
        if (r.status != "ok") ++failures;
    }
    std::cout << rows.size() << " rows written to " << (fs::path(args.out_dir) / "sweep.csv").string()
              << "\n";
    if (failures) {
        std::cout << failures << " point(s) failed; see status column\n";
        return 3;
    }
    return 0;
}

int cmd_validate(const CommonArgs& args) {
    const Scenario sc = load(args);
    const std::uint64_t seed = effective_seed(args, sc);
    const ValidationReport rep = run_validation(sc, seed, args.workers);

    fs::create_directories(args.out_dir);
    write_file(fs::path(args.out_dir) / "validation.json", rep.to_json());
    for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "  error " << c.error
                  << " (tolerance " << c.tolerance << ")"
                  << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    }
    std::cout << (rep.all_pass() ? "all checks passed" : "validation FAILED") << "\n";
    return rep.all_pass() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large-system rate analysis and joint design for reflector-assisted MIMO links"};
    app.require_subcommand(1);

    CommonArgs rate_args, opt_args, sweep_args, val_args;
    CLI::App* rate = app.add_subcommand("rate", "closed-form and Monte-Carlo rate at a design point");
    add_common(rate, rate_args);
    CLI::App* optimize = app.add_subcommand("optimize", "joint (Q, Theta) design");
    add_common(optimize, opt_args);
    CLI::App* sweep = app.add_subcommand("sweep", "sweep a scenario variable, emit CSV");
    add_common(sweep, sweep_args);
    sweep->add_option("--sweep", sweep_args.sweep, "<var>=<v1,v2,...>");
    CLI::App* validate = app.add_subcommand("validate", "run the cross-check suite");
    add_common(validate, val_args);

    try {
        app.parse(argc, argv);
        if (rate->parsed()) return cmd_rate(rate_args);
        if (optimize->parsed()) return cmd_optimize(opt_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (validate->parsed()) return cmd_validate(val_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
