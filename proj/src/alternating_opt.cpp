// SPDX-License-Identifier: Apache-2.0

#include "rismimo/alternating_opt.hpp"

#include <cmath>

namespace rismimo {

namespace {

JointResult run_single(const SystemStatistics& stats, std::uint64_t seed, int restart,
                       const JointOptOptions& opts) {
    // Restart 0 starts from flat phases (the coherent-combining candidate,
    // which dominates random basins whenever the LoS parts matter); later
    // restarts draw uniform-random phases from the (seed, restart) stream.
    RngStream phase_stream(seed, StreamTag::kPhaseInit, static_cast<std::uint64_t>(restart));
    PhaseVector theta = restart == 0 ? PhaseVector::flat(stats.dims.l)
                                     : PhaseVector::random(stats.dims.l, phase_stream);
    TransmitCovariance q = TransmitCovariance::uniform(stats.dims.n, stats.power_budget);

    JointResult out;
    out.q = q;
    out.theta = theta;
    out.best_restart = restart;

    FixedPointSolution sol;
    RateResult rate = deterministic_rate(stats, q, theta, opts.covariance.fixed_point, &sol);
    out.fp_iterations_total += sol.iterations;
    out.rate_trace_nats.push_back(rate.nats);
    double prev = rate.nats;

    for (int n = 1; n <= opts.max_outer; ++n) {
        out.outer_iterations = n;

        PhaseOptResult ph = optimize_phases(stats, q, theta, opts.phase, &sol);
        theta = ph.theta;
        sol = ph.last_solution;
        out.fp_iterations_total += ph.fp_iterations_total;

        CovarianceOptResult cv = optimize_covariance(stats, theta, q, opts.covariance, &sol);
        q = cv.q;
        sol = cv.last_solution;
        out.fp_iterations_total += cv.fp_iterations_total;

        const double now = cv.rate_trace_nats.back();
        out.rate_trace_nats.push_back(now);
        out.q = q;
        out.theta = theta;
        out.final_rate_nats = now;
        if (std::abs(now - prev) < opts.epsilon) {
            out.converged = true;
            break;
        }
        prev = now;
    }
    if (out.rate_trace_nats.size() == 1) out.final_rate_nats = out.rate_trace_nats.front();
    return out;
}

}  // namespace

JointResult optimize_joint(const SystemStatistics& stats, std::uint64_t seed,
                           const JointOptOptions& opts) {
    stats.check_shapes();
    const int restarts = std::max(1, opts.restarts);
    JointResult best = run_single(stats, seed, 0, opts);
    long fp_total = best.fp_iterations_total;
    for (int r = 1; r < restarts; ++r) {
        JointResult cand = run_single(stats, seed, r, opts);
        fp_total += cand.fp_iterations_total;
        if (cand.final_rate_nats > best.final_rate_nats) best = cand;
    }
    best.fp_iterations_total = fp_total;
    return best;
}

}  // namespace rismimo
