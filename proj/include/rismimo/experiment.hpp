// SPDX-License-Identifier: Apache-2.0
//
// Experiment drivers behind the command-line tool: per-scheme design-point
// evaluation, parameter sweeps with CSV emission, and the cross-check
// (validation) suite.

#ifndef RISMIMO_EXPERIMENT_HPP
#define RISMIMO_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rismimo/alternating_opt.hpp"
#include "rismimo/config.hpp"

namespace rismimo {

enum class Scheme {
    kOptimized,      ///< joint (Q, Theta) design
    kOptimizedQ,     ///< waterfilled Q, random phases
    kUniformRandom,  ///< uniform Q, random phases (no CSIT at the transmitter)
    kNoRis,          ///< reflector links removed, waterfilled Q
    kPerfectCsitMc,  ///< per-realization design on sampled channels (expensive)
};

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

/// Remove the reflector path: zero correlation, transmit shaping and LoS of
/// links 1 and 2.
SystemStatistics zero_reflector_links(const SystemStatistics& stats);

struct SchemeEvaluation {
    Scheme scheme = Scheme::kUniformRandom;
    std::optional<RateResult> analytic;  ///< absent for the per-realization scheme
    RateResult mc;
    int outer_iterations = 0;
    long fp_iterations_total = 0;
    TransmitCovariance q;
    PhaseVector theta;
};

struct EvalOptions {
    long trials = 2000;
    int workers = 1;
    OptimizerConfig opt;
    FixedPointOptions fixed_point;
};

SchemeEvaluation evaluate_scheme(const SystemStatistics& stats, Scheme scheme, std::uint64_t seed,
                                 const EvalOptions& opts);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepVariable { kPowerDbm, kRisElements, kRisPositionM };

SweepVariable parse_sweep_variable(const std::string& name);
std::string sweep_variable_name(SweepVariable v);

struct SweepSpec {
    SweepVariable variable = SweepVariable::kPowerDbm;
    std::vector<double> values;  ///< nonempty, strictly increasing
    std::vector<Scheme> schemes;
    long mc_trials = 2000;
};

struct ResultRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    Scheme scheme = Scheme::kUniformRandom;
    double rate_analytic_bits = 0.0;  ///< NaN when the scheme has no analytic value
    double rate_mc_bits = 0.0;
    double rate_mc_stderr = 0.0;
    int outer_iters = 0;
    long fp_iters_total = 0;
    double wall_ms = 0.0;
    std::string status = "ok";
};

inline constexpr const char* kCsvHeader =
    "sweep_var,sweep_value,scheme,rate_analytic_bits,rate_mc_bits,rate_mc_stderr,outer_iters,"
    "fp_iters_total,wall_ms,status";

std::string csv_row(const ResultRow& row);

/// Run the sweep point by point in value order; per-point failures are
/// recorded in the row status and the sweep continues. When `csv_out` is
/// given, rows are appended (and flushed) as they complete.
std::vector<ResultRow> run_sweep(const Scenario& scenario, const SweepSpec& spec,
                                 std::uint64_t seed, int workers, std::ostream* csv_out);

/// JSON sidecar describing the sweep axes, units and scheme labels.
std::string sweep_metadata_json(const SweepSpec& spec, const Scenario& scenario,
                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Validation suite
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    double error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string to_json() const;
};

/// Cross-check suite: trace normalizations, closed-form reductions, the
/// dual-path rate identity, gradient vs finite differences, waterfilling
/// KKT conditions, Stieltjes-transform agreement and analytic-vs-MC
/// agreement on the configured scenario.
ValidationReport run_validation(const Scenario& scenario, std::uint64_t seed, int workers);

}  // namespace rismimo

#endif
