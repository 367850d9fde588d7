// SPDX-License-Identifier: Apache-2.0
//
// Outer alternating loop producing the joint (Q, Theta) design: phase ascent
// for fixed Q, then covariance waterfilling for fixed Theta, repeated until
// the rate settles. Phase ascent only finds local optima, so the loop can be
// restarted from several random phase initializations, keeping the best.

#ifndef RISMIMO_ALTERNATING_OPT_HPP
#define RISMIMO_ALTERNATING_OPT_HPP

#include <cstdint>
#include <vector>

#include "rismimo/covariance_opt.hpp"
#include "rismimo/phase_opt.hpp"

namespace rismimo {

struct JointOptOptions {
    double epsilon = 1e-5;  ///< outer stopping threshold on the rate change (nats)
    int max_outer = 100;
    int restarts = 3;  ///< random phase re-initializations; best result kept
    CovarianceOptOptions covariance;
    PhaseOptOptions phase;
};

struct JointResult {
    TransmitCovariance q;
    PhaseVector theta;
    int outer_iterations = 0;
    std::vector<double> rate_trace_nats;  ///< rate after each outer iteration
    bool converged = false;
    double final_rate_nats = 0.0;
    long fp_iterations_total = 0;
    int best_restart = 0;
};

/// Alternating optimization from Q = (budget/N) I. Restart 0 starts from
/// flat phases (coherent-combining candidate); restart r >= 1 draws
/// uniform-random phases from the (seed, r) stream. The best restart wins.
JointResult optimize_joint(const SystemStatistics& stats, std::uint64_t seed,
                           const JointOptOptions& opts = {});

}  // namespace rismimo

#endif
