// SPDX-License-Identifier: Apache-2.0
//
// Phase design for a fixed transmit covariance: the analytic derivative of
// the closed-form rate with respect to each unit-modulus reflection phasor,
// and projected gradient ascent over the phase vector.
//
// The derivative treats the fixed-point scalars as constants (they are
// re-solved between steps, not differentiated through), and treats the
// conjugate phasor as the reciprocal, which is exact on the unit circle.
// With that convention, p_l * j*phasor_l is the plain real derivative of the
// rate with respect to the angle theta_l.
//
// Two implementations of the per-element loop are kept: a straight dense
// transcription (reference, serial) and a structured kernel that exploits
// the single-entry selector matrices and runs the loop under OpenMP. They
// agree to roundoff; tests and the benchmark compare them.

#ifndef RISMIMO_PHASE_OPT_HPP
#define RISMIMO_PHASE_OPT_HPP

#include <vector>

#include "rismimo/rate_eval.hpp"

namespace rismimo {

struct PhaseGradient {
    CVec p;          ///< dRate/dPhasor_l, l = 1..L
    RVec at_angles;  ///< evaluation point
};

/// Structured kernel, parallel over elements.
PhaseGradient phase_gradient(const SystemStatistics& stats, const TransmitCovariance& q,
                             const PhaseVector& theta, const FixedPointSolution& scalars,
                             int workers = 1);

/// Dense per-element transcription (serial reference).
PhaseGradient phase_gradient_reference(const SystemStatistics& stats, const TransmitCovariance& q,
                                       const PhaseVector& theta,
                                       const FixedPointSolution& scalars);

/// One projected ascent step: new angles arg(phasor_l + step * p_l).
/// A exactly-cancelled entry (phasor + step p == 0) keeps its previous angle.
PhaseVector projected_step(const PhaseVector& theta, const CVec& p, double step);

struct PhaseOptOptions {
    /// Initial angular move of the strongest element, radians. The raw
    /// update scale is step / max_l |p_l|; the angle is halved while a step
    /// loses rate (up to max_halvings) and doubled (capped at pi) after a
    /// step accepted without backtracking.
    double step = 0.1;
    double epsilon = 1e-5;  ///< stop when |rate change| < epsilon (nats)
    int max_iterations = 500;
    int max_halvings = 20;
    int workers = 1;
    FixedPointOptions fixed_point;
};

struct PhaseOptResult {
    PhaseVector theta;
    std::vector<double> rate_trace_nats;  ///< monotone by backtracking
    int iterations = 0;
    long fp_iterations_total = 0;
    bool converged = false;
    FixedPointSolution last_solution;
};

/// Projected gradient ascent from theta_init. A step that would decrease the
/// rate is retried with half the step (up to max_halvings), which keeps the
/// recorded trace nondecreasing.
PhaseOptResult optimize_phases(const SystemStatistics& stats, const TransmitCovariance& q,
                               const PhaseVector& theta_init, const PhaseOptOptions& opts = {},
                               const FixedPointSolution* warm_start = nullptr);

}  // namespace rismimo

#endif
