// SPDX-License-Identifier: Apache-2.0
//
// Rate evaluation for a concrete design point (Q, Theta): the replacement map
// folding Q and Theta into effective statistics, the closed-form rate with
// its F-matrix assembly, and the Monte-Carlo ergodic-rate oracle.
//
// The central identity, exercised heavily by the tests: for any (Q, Theta),
// deterministic_rate(stats, Q, Theta) equals
// asymptotic_rate(apply_replacements(stats, Q, Theta)) - two independent
// evaluation paths of the same quantity.

#ifndef RISMIMO_RATE_EVAL_HPP
#define RISMIMO_RATE_EVAL_HPP

#include <cstdint>

#include "rismimo/large_system.hpp"

namespace rismimo {

/// Transmit covariance with its total power budget; Hermitian PSD with
/// tr Q <= budget (small slack for roundoff).
struct TransmitCovariance {
    CMat q;
    double budget = 1.0;

    static TransmitCovariance uniform(int n, double budget_total);
    void validate() const;
};

/// Per-element reflection phases, stored as angles so the unit modulus holds
/// exactly by construction.
class PhaseVector {
public:
    PhaseVector() = default;  ///< zero-element vector
    explicit PhaseVector(RVec angles);
    static PhaseVector flat(int l);  ///< all-zero phases (Theta = I)
    static PhaseVector random(int l, RngStream& stream);

    int size() const { return static_cast<int>(theta_.size()); }
    const RVec& angles() const { return theta_; }
    CVec phasors() const;
    CMat matrix() const;  ///< diag(exp(j theta))

private:
    RVec theta_;
};

/// Effective statistics with Q and Theta absorbed:
///   T0 <- Q^(1/2) T0 Q^(1/2),  Hbar0 <- Hbar0 Q^(1/2)
///   T1 <- Q^(1/2) T1 Q^(1/2),  Hbar1 <- Hbar1 Q^(1/2)
///   T2 <- Theta^H T2 Theta,    Hbar2 <- Hbar2 Theta
/// The input is left untouched.
SystemStatistics apply_replacements(const SystemStatistics& stats, const TransmitCovariance& q,
                                    const PhaseVector& theta);

/// The F-matrix family entering the closed-form rate and the waterfilling
/// step. F is Hermitian in exact arithmetic; it is asserted Hermitian to
/// 1e-9 (relative) and symmetrized, since waterfilling needs an exactly
/// Hermitian input.
struct FAssembly {
    CMat f;     // N x N, symmetrized
    CMat f1;    // L x L
    CMat f2;    // K x K
    CMat phi2;  // K x K
};

/// Build F, F1, F2, Phi2 for the given design point from the fixed-point
/// scalars solved on the effective statistics.
FAssembly assemble_F(const SystemStatistics& stats, const PhaseVector& theta,
                     const FixedPointSolution& scalars);

/// Closed-form rate at (Q, Theta) with the scalars frozen at `scalars`
/// (the envelope form used by the phase gradient and its finite-difference
/// oracle). No fixed point is solved here.
RateResult deterministic_rate_frozen(const SystemStatistics& stats, const TransmitCovariance& q,
                                     const PhaseVector& theta, const FixedPointSolution& scalars);

/// Closed-form rate at (Q, Theta): solves the fixed point on the effective
/// statistics, then evaluates the F-matrix form. Refuses non-converged
/// fixed points.
RateResult deterministic_rate(const SystemStatistics& stats, const TransmitCovariance& q,
                              const PhaseVector& theta, const FixedPointOptions& opts = {},
                              FixedPointSolution* solution_out = nullptr,
                              const FixedPointSolution* warm_start = nullptr);

/// Monte-Carlo ergodic rate: averages log det(I + (1/sigma2) H Q H^H) over
/// i.i.d. draws of H = H0 + H2 Theta H1. Trials are split across workers by
/// index; the mean is identical for any worker count given the same seed.
RateResult monte_carlo_rate(const SystemStatistics& stats, const TransmitCovariance& q,
                            const PhaseVector& theta, long trials, std::uint64_t seed,
                            int workers = 1);

/// Plain-loop reference implementation (kept for tests and the benchmark).
RateResult monte_carlo_rate_serial(const SystemStatistics& stats, const TransmitCovariance& q,
                                   const PhaseVector& theta, long trials, std::uint64_t seed);

}  // namespace rismimo

#endif
