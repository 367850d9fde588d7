// SPDX-License-Identifier: Apache-2.0

#include "rismimo/experiment.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "rismimo/matrix_kernel.hpp"
#include "rismimo/parallel.hpp"

namespace rismimo {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
    if (name == "optimized") return Scheme::kOptimized;
    if (name == "optimized_q") return Scheme::kOptimizedQ;
    if (name == "uniform_random") return Scheme::kUniformRandom;
    if (name == "no_ris") return Scheme::kNoRis;
    if (name == "perfect_csit_mc") return Scheme::kPerfectCsitMc;
    throw ConfigError("scheme", "unknown scheme `" + name + "`");
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kOptimized: return "optimized";
        case Scheme::kOptimizedQ: return "optimized_q";
        case Scheme::kUniformRandom: return "uniform_random";
        case Scheme::kNoRis: return "no_ris";
        case Scheme::kPerfectCsitMc: return "perfect_csit_mc";
    }
    return "?";
}

SystemStatistics zero_reflector_links(const SystemStatistics& stats) {
    SystemStatistics out = stats;
    out.link1.r.setZero();
    out.link1.t.setZero();
    out.link1.hbar.setZero();
    out.link2.r.setZero();
    out.link2.t.setZero();
    out.link2.hbar.setZero();
    return out;
}

namespace {

// --- per-realization design on sampled channels -----------------------------

double perfect_csit_trial_nats(const ChannelSampler& sampler, double sigma2, double budget,
                               std::uint64_t seed, long trial) {
    RngStream stream(seed, StreamTag::kMonteCarlo, static_cast<std::uint64_t>(trial));
    CMat h0, h1, h2;
    sampler.sample(stream, h0, h1, h2);
    const int n = static_cast<int>(h0.cols());
    const int l = static_cast<int>(h1.rows());
    const int k = static_cast<int>(h0.rows());

    PhaseVector theta = PhaseVector::random(l, stream);
    auto design_q = [&](const PhaseVector& th, CMat& heff) {
        heff = h0 + h2 * th.matrix() * h1;
        const CMat f = heff.adjoint() * heff / sigma2;
        return waterfill((f + f.adjoint()) / 2.0, budget).q;
    };
    auto inst_rate = [&](const CMat& heff, const TransmitCovariance& q) {
        return logdet_hpd(CMat::Identity(k, k) + heff * q.q * heff.adjoint() / sigma2);
    };

    CMat heff;
    TransmitCovariance q = design_q(theta, heff);
    double rate = inst_rate(heff, q);
    for (int iter = 0; iter < 30; ++iter) {
        // Phase gradient for fixed Q on the sampled (deterministic) channel.
        const CMat f = heff.adjoint() * heff / sigma2;
        const CMat g =
            q.q * solve_general(CMat(CMat::Identity(n, n) + f * q.q), CMat::Identity(n, n),
                                "I + F Q");
        const CMat a = heff.adjoint() * h2;   // N x L
        const CMat b = h2.adjoint() * heff;   // L x N
        const CVec phasors = theta.phasors();
        CVec p(l);
        for (int j = 0; j < l; ++j) {
            const Complex t1 = h1.row(j) * g * a.col(j);
            const Complex t2 = b.row(j) * g * h1.adjoint().col(j);
            p[j] = (t1 - t2 / (phasors[j] * phasors[j])) / sigma2;
        }
        double step = 0.1;
        bool accepted = false;
        for (int h = 0; h < 16; ++h) {
            // Ascent runs along the conjugate of the derivative (see phase_opt).
            const PhaseVector cand = projected_step(theta, CVec(p.conjugate()), step);
            CMat cand_heff;
            const TransmitCovariance cand_q = design_q(cand, cand_heff);
            const double cand_rate = inst_rate(cand_heff, cand_q);
            if (cand_rate >= rate) {
                const double delta = cand_rate - rate;
                theta = cand;
                q = cand_q;
                heff = cand_heff;
                rate = cand_rate;
                accepted = delta >= 1e-4;
                break;
            }
            step /= 2.0;
        }
        if (!accepted) break;
    }
    return rate;
}

RateResult perfect_csit_mc(const SystemStatistics& stats, long trials, std::uint64_t seed,
                           int workers) {
    const ChannelSampler sampler(stats);
    std::vector<double> vals(static_cast<size_t>(trials));
    parallel_for(trials, workers, [&](std::ptrdiff_t i) {
        vals[static_cast<size_t>(i)] =
            perfect_csit_trial_nats(sampler, stats.sigma2, stats.power_budget, seed, i);
    });
    KahanSum sum;
    for (double v : vals) sum.add(v);
    const double mean = sum.value() / double(trials);
    KahanSum var;
    for (double v : vals) var.add((v - mean) * (v - mean));
    RateResult rr;
    rr.provenance = RateResult::Provenance::kMonteCarlo;
    rr.nats = mean;
    rr.trials = trials;
    rr.stderr_nats = trials > 1 ? std::sqrt(var.value() / (double(trials) * (trials - 1))) : 0.0;
    return rr;
}

JointOptOptions make_joint_options(const EvalOptions& opts, int workers) {
    JointOptOptions jo;
    jo.epsilon = opts.opt.epsilon;
    jo.restarts = opts.opt.restarts;
    jo.max_outer = opts.opt.max_outer;
    jo.covariance.epsilon = opts.opt.epsilon;
    jo.covariance.fixed_point = opts.fixed_point;
    jo.phase.epsilon = opts.opt.epsilon;
    jo.phase.step = opts.opt.phase_step;
    jo.phase.workers = workers;
    jo.phase.fixed_point = opts.fixed_point;
    return jo;
}

}  // namespace

SchemeEvaluation evaluate_scheme(const SystemStatistics& stats, Scheme scheme, std::uint64_t seed,
                                 const EvalOptions& opts) {
    stats.check_shapes();
    RngStream phase_stream(seed, StreamTag::kPhaseInit, 0);
    const PhaseVector random_theta = PhaseVector::random(stats.dims.l, phase_stream);
    const TransmitCovariance uniform_q =
        TransmitCovariance::uniform(stats.dims.n, stats.power_budget);

    SchemeEvaluation ev;
    ev.scheme = scheme;
    ev.q = uniform_q;
    ev.theta = random_theta;
    switch (scheme) {
        case Scheme::kUniformRandom: {
            FixedPointSolution sol;
            ev.analytic =
                deterministic_rate(stats, uniform_q, random_theta, opts.fixed_point, &sol);
            ev.fp_iterations_total = sol.iterations;
            ev.mc = monte_carlo_rate(stats, uniform_q, random_theta, opts.trials, seed,
                                     opts.workers);
            break;
        }
        case Scheme::kOptimizedQ: {
            CovarianceOptOptions co;
            co.epsilon = opts.opt.epsilon;
            co.fixed_point = opts.fixed_point;
            const CovarianceOptResult cv =
                optimize_covariance(stats, random_theta, uniform_q, co);
            ev.q = cv.q;
            ev.outer_iterations = cv.iterations;
            ev.fp_iterations_total = cv.fp_iterations_total;
            ev.analytic = deterministic_rate(stats, ev.q, random_theta, opts.fixed_point, nullptr,
                                             &cv.last_solution);
            ev.mc = monte_carlo_rate(stats, ev.q, random_theta, opts.trials, seed, opts.workers);
            break;
        }
        case Scheme::kOptimized: {
            const JointResult jr =
                optimize_joint(stats, seed, make_joint_options(opts, opts.workers));
            ev.q = jr.q;
            ev.theta = jr.theta;
            ev.outer_iterations = jr.outer_iterations;
            ev.fp_iterations_total = jr.fp_iterations_total;
            ev.analytic = deterministic_rate(stats, ev.q, ev.theta, opts.fixed_point);
            ev.mc = monte_carlo_rate(stats, ev.q, ev.theta, opts.trials, seed, opts.workers);
            break;
        }
        case Scheme::kNoRis: {
            const SystemStatistics bare = zero_reflector_links(stats);
            const PhaseVector flat = PhaseVector::flat(stats.dims.l);
            CovarianceOptOptions co;
            co.epsilon = opts.opt.epsilon;
            co.fixed_point = opts.fixed_point;
            const CovarianceOptResult cv = optimize_covariance(bare, flat, uniform_q, co);
            ev.q = cv.q;
            ev.theta = flat;
            ev.outer_iterations = cv.iterations;
            ev.fp_iterations_total = cv.fp_iterations_total;
            ev.analytic = deterministic_rate(bare, ev.q, flat, opts.fixed_point, nullptr,
                                             &cv.last_solution);
            ev.mc = monte_carlo_rate(bare, ev.q, flat, opts.trials, seed, opts.workers);
            break;
        }
        case Scheme::kPerfectCsitMc: {
            ev.mc = perfect_csit_mc(stats, opts.trials, seed, opts.workers);
            break;
        }
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

SweepVariable parse_sweep_variable(const std::string& name) {
    if (name == "power_dbm") return SweepVariable::kPowerDbm;
    if (name == "ris_elements") return SweepVariable::kRisElements;
    if (name == "ris_position_m") return SweepVariable::kRisPositionM;
    throw ConfigError("sweep", "unknown sweep variable `" + name + "`");
}

std::string sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::kPowerDbm: return "power_dbm";
        case SweepVariable::kRisElements: return "ris_elements";
        case SweepVariable::kRisPositionM: return "ris_position_m";
    }
    return "?";
}

std::string csv_row(const ResultRow& row) {
    std::ostringstream os;
    os << row.sweep_var << ',' << format_double(row.sweep_value) << ',' << scheme_name(row.scheme)
       << ',' << format_double(row.rate_analytic_bits) << ',' << format_double(row.rate_mc_bits)
       << ',' << format_double(row.rate_mc_stderr) << ',' << row.outer_iters << ','
       << row.fp_iters_total << ',' << format_double(row.wall_ms) << ',' << row.status;
    return os.str();
}

namespace {

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable var, double value) {
    ScenarioConfig c = base;
    switch (var) {
        case SweepVariable::kPowerDbm:
            c.p_dbm = value;
            break;
        case SweepVariable::kRisElements: {
            if (value < 1.0 || value != std::floor(value)) {
                throw ConfigError("sweep.values", "ris_elements values must be positive integers");
            }
            c.dims.l = static_cast<int>(value);
            break;
        }
        case SweepVariable::kRisPositionM:
            c.ris.x = value;
            break;
    }
    return c;
}

std::string sanitize_status(std::string s) {
    for (char& ch : s) {
        if (ch == ',' || ch == '\n') ch = ';';
    }
    return s;
}

}  // namespace

std::vector<ResultRow> run_sweep(const Scenario& scenario, const SweepSpec& spec,
                                 std::uint64_t seed, int workers, std::ostream* csv_out) {
    if (spec.values.empty()) throw ConfigError("sweep.values", "must be nonempty");
    for (size_t i = 1; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > spec.values[i - 1])) {
            throw ConfigError("sweep.values", "must be strictly increasing");
        }
    }
    if (spec.schemes.empty()) throw ConfigError("sweep.schemes", "must be nonempty");

    if (csv_out) *csv_out << kCsvHeader << '\n' << std::flush;
    std::vector<ResultRow> rows;
    for (double value : spec.values) {
        for (Scheme scheme : spec.schemes) {
            ResultRow row;
            row.sweep_var = sweep_variable_name(spec.variable);
            row.sweep_value = value;
            row.scheme = scheme;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const ScenarioConfig cfg = apply_sweep_value(scenario.channel, spec.variable, value);
                const SystemStatistics stats = build_statistics(cfg);
                EvalOptions eo;
                eo.trials = spec.mc_trials;
                eo.workers = workers;
                eo.opt = scenario.opt;
                const SchemeEvaluation ev = evaluate_scheme(stats, scheme, seed, eo);
                row.rate_analytic_bits = ev.analytic ? ev.analytic->bits() : NAN;
                row.rate_mc_bits = ev.mc.bits();
                row.rate_mc_stderr = ev.mc.stderr_bits();
                row.outer_iters = ev.outer_iterations;
                row.fp_iters_total = ev.fp_iterations_total;
            } catch (const std::exception& e) {
                row.rate_analytic_bits = NAN;
                row.rate_mc_bits = NAN;
                row.rate_mc_stderr = NAN;
                row.status = sanitize_status(std::string("error: ") + e.what());
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            rows.push_back(row);
            if (csv_out) *csv_out << csv_row(row) << '\n' << std::flush;
        }
    }
    return rows;
}

std::string sweep_metadata_json(const SweepSpec& spec, const Scenario& scenario,
                                std::uint64_t seed) {
    json j;
    j["sweep_var"] = sweep_variable_name(spec.variable);
    j["values"] = spec.values;
    switch (spec.variable) {
        case SweepVariable::kPowerDbm: j["x_axis"] = "transmit power P (dBm)"; break;
        case SweepVariable::kRisElements: j["x_axis"] = "reflecting elements L"; break;
        case SweepVariable::kRisPositionM: j["x_axis"] = "RIS abscissa d (m)"; break;
    }
    j["y_axis"] = "achievable ergodic rate (bits per channel use)";
    std::vector<std::string> schemes;
    for (Scheme s : spec.schemes) schemes.push_back(scheme_name(s));
    j["schemes"] = schemes;
    j["mc_trials"] = spec.mc_trials;
    j["seed"] = seed;
    j["dims"] = {{"n", scenario.channel.dims.n},
                 {"l", scenario.channel.dims.l},
                 {"k", scenario.channel.dims.k}};
    j["csv_columns"] = kCsvHeader;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Validation suite
// ---------------------------------------------------------------------------

bool ValidationReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::string ValidationReport::to_json() const {
    json j;
    j["all_pass"] = all_pass();
    j["checks"] = json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"error", c.error},
                               {"tolerance", c.tolerance},
                               {"detail", c.detail}});
    }
    return j.dump(2);
}

namespace {

void add_check(ValidationReport& rep, const std::string& name, double error, double tol,
               const std::string& detail = "") {
    rep.checks.push_back({name, error <= tol, error, tol, detail});
}

void add_failure(ValidationReport& rep, const std::string& name, const std::string& what) {
    rep.checks.push_back({name, false, INFINITY, 0.0, what});
}

TransmitCovariance random_covariance(int n, double budget, RngStream& stream) {
    CMat a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = stream.cnormal();
    }
    CMat q = a * a.adjoint();
    q *= budget / q.trace().real();
    TransmitCovariance tc;
    tc.q = (q + q.adjoint()) / 2.0;
    tc.budget = budget;
    return tc;
}

}  // namespace

ValidationReport run_validation(const Scenario& scenario, std::uint64_t seed, int workers) {
    ValidationReport rep;
    const SystemStatistics stats = build_statistics(scenario.channel);
    const SystemDims dims = stats.dims;
    const int n = dims.n, l = dims.l, k = dims.k;

    // 1. Trace normalizations.
    {
        const struct {
            const char* name;
            double actual;
            double target;
        } rows[] = {
            {"trace.link0.r", stats.link0.r.trace().real(), double(k)},
            {"trace.link1.r", stats.link1.r.trace().real(), double(l)},
            {"trace.link2.r", stats.link2.r.trace().real(), double(k)},
            {"trace.link0.t", stats.link0.t.trace().real(),
             double(n) * n * stats.link0.gamma / (stats.link0.kappa + 1.0)},
            {"trace.link1.t", stats.link1.t.trace().real(),
             double(n) * n * stats.link1.gamma / (stats.link1.kappa + 1.0)},
            {"trace.link2.t", stats.link2.t.trace().real(),
             double(l) * l * stats.link2.gamma / (stats.link2.kappa + 1.0)},
            {"trace.link0.los", (stats.link0.hbar * stats.link0.hbar.adjoint()).trace().real(),
             stats.link0.kappa / (stats.link0.kappa + 1.0) * n * k * stats.link0.gamma},
            {"trace.link1.los", (stats.link1.hbar * stats.link1.hbar.adjoint()).trace().real(),
             stats.link1.kappa / (stats.link1.kappa + 1.0) * n * l * stats.link1.gamma},
            {"trace.link2.los", (stats.link2.hbar * stats.link2.hbar.adjoint()).trace().real(),
             stats.link2.kappa / (stats.link2.kappa + 1.0) * k * l * stats.link2.gamma},
        };
        for (const auto& r : rows) {
            const double denom = std::max(std::abs(r.target), 1e-300);
            add_check(rep, r.name, std::abs(r.actual - r.target) / denom, 1e-8);
        }
    }

    // 2-4. Closed-form reductions against the general evaluation, on the
    // power-constrained effective statistics (the identities hold for any
    // statistics; the effective ones are the physically scaled instance).
    SystemStatistics eff = stats;
    {
        RngStream stream(seed, StreamTag::kTest, 1);
        eff = apply_replacements(stats,
                                 TransmitCovariance::uniform(n, stats.power_budget),
                                 PhaseVector::random(l, stream));
    }
    try {
        const SystemStatistics bare = zero_reflector_links(eff);
        const double a = asymptotic_rate(bare).nats;
        const double b = rate_no_ris(bare).nats;
        add_check(rep, "reduction.no_ris", std::abs(a - b), 1e-9);
    } catch (const std::exception& e) {
        add_failure(rep, "reduction.no_ris", e.what());
    }
    try {
        SystemStatistics nod = eff;
        nod.link0.r.setZero();
        nod.link0.t.setZero();
        nod.link0.hbar.setZero();
        const double a = asymptotic_rate(nod).nats;
        const double b = rate_no_direct(nod).nats;
        add_check(rep, "reduction.no_direct", std::abs(a - b), 1e-9);
    } catch (const std::exception& e) {
        add_failure(rep, "reduction.no_direct", e.what());
    }
    try {
        SystemStatistics ray = eff;
        ray.link0.hbar.setZero();
        ray.link1.hbar.setZero();
        ray.link2.hbar.setZero();
        const double a = asymptotic_rate(ray).nats;
        const double b = rate_rayleigh(ray).nats;
        add_check(rep, "reduction.rayleigh", std::abs(a - b), 1e-9);
    } catch (const std::exception& e) {
        add_failure(rep, "reduction.rayleigh", e.what());
    }

    // 5. Dual-path identity on random design points.
    try {
        double worst = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            RngStream stream(seed, StreamTag::kTest, 100 + trial);
            const TransmitCovariance q = random_covariance(n, stats.power_budget, stream);
            const PhaseVector theta = PhaseVector::random(l, stream);
            const double via_f = deterministic_rate(stats, q, theta).nats;
            const double via_general = asymptotic_rate(apply_replacements(stats, q, theta)).nats;
            worst = std::max(worst, std::abs(via_f - via_general));
        }
        add_check(rep, "dual_path_identity", worst, 1e-9);
    } catch (const std::exception& e) {
        add_failure(rep, "dual_path_identity", e.what());
    }

    // 6. Phase gradient against frozen-scalar central finite differences.
    // Components far below the gradient scale sit inside the h = 1e-5
    // difference-quotient roundoff (~eps * rate / 2h), so the error is
    // measured against the gradient scale rather than entrywise.
    try {
        double worst = 0.0;
        for (int point = 0; point < 2; ++point) {
            RngStream stream(seed, StreamTag::kTest, 200 + point);
            const TransmitCovariance q = random_covariance(n, stats.power_budget, stream);
            const PhaseVector theta = PhaseVector::random(l, stream);
            FixedPointSolution sol;
            deterministic_rate(stats, q, theta, {}, &sol);
            const PhaseGradient grad = phase_gradient(stats, q, theta, sol, workers);
            const CVec phasors = theta.phasors();
            const double h = 1e-5;
            RVec fd(l);
            for (int j = 0; j < l; ++j) {
                RVec ang = theta.angles();
                ang[j] += h;
                const double up = deterministic_rate_frozen(stats, q, PhaseVector(ang), sol).nats;
                ang[j] -= 2 * h;
                const double dn = deterministic_rate_frozen(stats, q, PhaseVector(ang), sol).nats;
                fd[j] = (up - dn) / (2 * h);
            }
            const double scale = std::max(fd.cwiseAbs().maxCoeff(), 1e-12);
            for (int j = 0; j < l; ++j) {
                const Complex analytic = grad.p[j] * kJ * phasors[j];
                worst = std::max(worst,
                                 std::abs(analytic - fd[j]) / std::max(std::abs(fd[j]), scale));
            }
        }
        add_check(rep, "gradient.finite_difference", worst, 1e-4);
    } catch (const std::exception& e) {
        add_failure(rep, "gradient.finite_difference", e.what());
    }

    // 6b. Informational: gap between the frozen-scalar derivative (what the
    // ascent uses) and the full derivative with the scalars re-solved at
    // every perturbed point. Logged, not gated.
    try {
        RngStream stream(seed, StreamTag::kTest, 250);
        const TransmitCovariance q = random_covariance(n, stats.power_budget, stream);
        const PhaseVector theta = PhaseVector::random(l, stream);
        FixedPointSolution sol;
        deterministic_rate(stats, q, theta, {}, &sol);
        const double h = 1e-4;
        double gap = 0.0;
        for (int j = 0; j < std::min(l, 4); ++j) {
            RVec ang = theta.angles();
            ang[j] += h;
            const double up_frozen =
                deterministic_rate_frozen(stats, q, PhaseVector(ang), sol).nats;
            const double up_full = deterministic_rate(stats, q, PhaseVector(ang), {}, nullptr,
                                                      &sol).nats;
            ang[j] -= 2 * h;
            const double dn_frozen =
                deterministic_rate_frozen(stats, q, PhaseVector(ang), sol).nats;
            const double dn_full = deterministic_rate(stats, q, PhaseVector(ang), {}, nullptr,
                                                      &sol).nats;
            gap = std::max(gap, std::abs((up_full - dn_full) - (up_frozen - dn_frozen)) /
                                    (2 * h));
        }
        rep.checks.push_back({"gradient.envelope_gap", true, gap, INFINITY,
                              "full minus frozen-scalar difference quotient (diagnostic)"});
    } catch (const std::exception& e) {
        add_failure(rep, "gradient.envelope_gap", e.what());
    }

    // 7. Waterfilling KKT conditions on random Hermitian PSD inputs.
    try {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            RngStream stream(seed, StreamTag::kTest, 300 + trial);
            const int m = 2 + static_cast<int>(stream.uniform() * 7);
            CMat bmat(m, m);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) bmat(i, j) = stream.cnormal();
            }
            CMat f = bmat * bmat.adjoint();
            const double budget = 0.25 + 4.0 * stream.uniform();
            const WaterfillingResult wf = waterfill((f + f.adjoint()) / 2.0, budget);
            worst = std::max(worst, std::abs(wf.q.q.trace().real() - budget) / budget);
            for (int i = 0; i < m; ++i) {
                const double lam = wf.eigenvalues[i];
                if (i < wf.active_count) {
                    const double level = 1.0 / wf.mu - 1.0 / lam;
                    worst = std::max(worst,
                                     std::abs(1.0 / (level + 1.0 / lam) - wf.mu) / wf.mu);
                } else if (lam > 0) {
                    if (lam > wf.mu * (1 + 1e-10)) worst = std::max(worst, lam / wf.mu - 1.0);
                }
            }
        }
        add_check(rep, "waterfill.kkt", worst, 1e-10);
    } catch (const std::exception& e) {
        add_failure(rep, "waterfill.kkt", e.what());
    }

    // 8. Stieltjes transform vs eigenvalue Monte Carlo on a synthetic
    //    equal-dimension instance.
    try {
        const int m = 64;
        SystemStatistics syn;
        syn.dims = {m, m, m};
        syn.sigma2 = 1.0;
        syn.power_budget = 1.0;
        syn.link0.r = CMat::Zero(m, m);
        syn.link0.t = CMat::Zero(m, m);
        syn.link0.hbar = CMat::Zero(m, m);
        syn.link1.r = CMat::Identity(m, m);
        syn.link1.t = CMat::Identity(m, m);
        syn.link1.hbar = CMat::Zero(m, m);
        syn.link2.r = CMat::Identity(m, m);
        syn.link2.t = CMat::Identity(m, m);
        syn.link2.hbar = CMat::Zero(m, m);
        const double omega = 1.0;
        const double det_eq = stieltjes_product(syn, omega);
        const ChannelSampler sampler(syn);
        const long trials = 200;
        std::vector<double> vals(trials);
        parallel_for(trials, workers, [&](std::ptrdiff_t i) {
            RngStream stream(seed, StreamTag::kChannelSample, static_cast<std::uint64_t>(i));
            CMat h0, h1, h2;
            sampler.sample(stream, h0, h1, h2);
            const CMat b = h2 * h1 * h1.adjoint() * h2.adjoint();
            vals[static_cast<size_t>(i)] =
                solve_general(CMat(b + omega * CMat::Identity(m, m)), CMat(CMat::Identity(m, m)),
                              "B + omega I")
                    .trace()
                    .real() /
                m;
        });
        KahanSum sum;
        for (double v : vals) sum.add(v);
        const double mc = sum.value() / double(trials);
        add_check(rep, "stieltjes.mc_agreement", std::abs(det_eq - mc) / std::abs(mc), 0.02);
    } catch (const std::exception& e) {
        add_failure(rep, "stieltjes.mc_agreement", e.what());
    }

    // 9. Analytic vs Monte-Carlo rate on the configured scenario.
    try {
        RngStream stream(seed, StreamTag::kPhaseInit, 0);
        const PhaseVector theta = PhaseVector::random(l, stream);
        const TransmitCovariance q = TransmitCovariance::uniform(n, stats.power_budget);
        const RateResult analytic = deterministic_rate(stats, q, theta);
        const RateResult mc = monte_carlo_rate(stats, q, theta, scenario.channel.mc_trials, seed,
                                               workers);
        const double err = std::abs(analytic.nats - mc.nats);
        const double tol = std::max(0.02 * std::abs(mc.nats), 3.0 * mc.stderr_nats);
        add_check(rep, "rate.analytic_vs_mc", err, tol,
                  "analytic " + format_double(analytic.bits()) + " bits, mc " +
                      format_double(mc.bits()) + " +/- " + format_double(mc.stderr_bits()));
    } catch (const std::exception& e) {
        add_failure(rep, "rate.analytic_vs_mc", e.what());
    }

    return rep;
}

}  // namespace rismimo
