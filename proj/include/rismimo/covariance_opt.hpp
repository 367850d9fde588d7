// SPDX-License-Identifier: Apache-2.0
//
// Transmit-covariance design for a fixed phase configuration: waterfilling
// over the eigenmodes of F, iterated with the fixed-point re-solve since the
// scalars themselves depend on Q.

#ifndef RISMIMO_COVARIANCE_OPT_HPP
#define RISMIMO_COVARIANCE_OPT_HPP

#include <vector>

#include "rismimo/rate_eval.hpp"

namespace rismimo {

struct WaterfillingResult {
    TransmitCovariance q;
    double mu = 0.0;          ///< reciprocal water level
    RVec eigenvalues;         ///< of F, descending
    int active_count = 0;     ///< modes with positive power
    bool degenerate = false;  ///< F had no positive eigenvalue; Q fell back to uniform
};

/// Exact active-set waterfilling: eigendecompose F, scan candidate active
/// sets in descending-eigenvalue order and keep the consistent one. No
/// bisection, no tolerance tuning. Eigenvalues below 1e-12 * lambda_max are
/// treated as dead modes.
WaterfillingResult waterfill(const CMat& f, double budget);

struct CovarianceOptOptions {
    double epsilon = 1e-5;  ///< stop when |rate change| drops below this (nats)
    int max_iterations = 200;
    FixedPointOptions fixed_point;
};

struct CovarianceOptResult {
    TransmitCovariance q;
    std::vector<double> rate_trace_nats;  ///< rate after each update
    int iterations = 0;
    long fp_iterations_total = 0;
    bool converged = false;
    FixedPointSolution last_solution;  ///< fixed point at the returned Q
};

/// Alternate fixed-point solve -> F assembly -> waterfilling until the rate
/// change drops below epsilon. The fixed point is warm-started from the
/// previous iterate.
CovarianceOptResult optimize_covariance(const SystemStatistics& stats, const PhaseVector& theta,
                                        const TransmitCovariance& q_init,
                                        const CovarianceOptOptions& opts = {},
                                        const FixedPointSolution* warm_start = nullptr);

}  // namespace rismimo

#endif
