// SPDX-License-Identifier: Apache-2.0
//
// Large-system (deterministic-equivalent) approximation of the ergodic rate
// of the sum-plus-product channel H0 + H2 Theta H1 under statistical CSIT.
//
// The approximation is parameterized by six coupled nonnegative scalars
// {e0, e1, e2, te0, te1, te2} solving a fixed-point system whose right-hand
// sides are traces of auxiliary matrices (Phi*, Psi*, Xi0, Omega, Pi*) built
// from the channel statistics. The solver runs a damped fixed-point
// iteration; the rate is then a sum of log-determinants minus the bilinear
// terms N e0 te0 + N e1 te1 + L e2 te2.
//
// Degenerate closed forms are provided for the single-hop case (no RIS), the
// pure product channel (no direct link), all-Rayleigh statistics, and the
// Stieltjes transform of the two-hop Gram matrix.
//
// All solves internally rescale the statistics so the noise power is 1
// (the system and the rate are invariant under that rescaling); residuals
// and tolerances refer to the rescaled system, which keeps the absolute
// convergence thresholds meaningful across power scales.

#ifndef RISMIMO_LARGE_SYSTEM_HPP
#define RISMIMO_LARGE_SYSTEM_HPP

#include <array>

#include "rismimo/channel_model.hpp"
#include "rismimo/rate_result.hpp"
#include "rismimo/types.hpp"

namespace rismimo {

/// The solver's convergence metric is the worst equation residual measured
/// entrywise against max(1, |scalar|) on the noise-rescaled system: absolute
/// for small scalars, relative for large ones (a pure absolute threshold is
/// unreachable in doubles once a scalar runs past ~1e4).
struct FixedPointOptions {
    double tol = 1e-10;           ///< residual threshold
    double update_tol = 1e-12;    ///< applied-update threshold (alpha * residual)
    int max_iterations = 5000;
    double initial_damping = 1.0; ///< halved whenever the residual increases
    double min_damping = 1.0 / 64.0;
};

struct FixedPointSolution {
    double e0 = 0, e1 = 0, e2 = 0, te0 = 0, te1 = 0, te2 = 0;
    int iterations = 0;
    double residual = 0.0;  ///< scaled residual of the six equations, see above
    bool converged = false;

    std::array<double, 6> scalars() const { return {e0, e1, e2, te0, te1, te2}; }
    static FixedPointSolution from_scalars(const std::array<double, 6>& x) {
        FixedPointSolution s;
        s.e0 = x[0]; s.e1 = x[1]; s.e2 = x[2];
        s.te0 = x[3]; s.te1 = x[4]; s.te2 = x[5];
        return s;
    }
};

/// The auxiliary matrices of the deterministic equivalent, assembled in
/// dependency order Phi2 -> Psi2/Psi1 -> Phi0/Phi1 -> Psi0 -> Xi0 -> Omega ->
/// Pi's. Inverse factors that the residual evaluation reuses are kept.
struct AuxiliaryMatrices {
    CMat phi0, phi1, phi2;       // K x K, L x L, K x K
    CMat psi0, psi1, psi2;       // K x N, K x K, L x L
    CMat xi0;                    // K x N
    CMat omega;                  // N x N
    CMat pi01, pi11, pi12, pi21; // K x N, L x K, L x N, L x N
    CMat pi31, pi32, pi33;       // K x L, K x K, K x N
    CMat inv_phi0, inv_phi1, inv_phi2;
    CMat eye_omega_inv;          // (I + Omega)^-1
    CMat eye_omega_inv_sqrt;     // (I + Omega)^-1/2, principal branch
};

AuxiliaryMatrices assemble_auxiliary(const std::array<double, 6>& scalars,
                                     const SystemStatistics& stats);

/// Right-hand sides of the six equations at the given scalars.
std::array<double, 6> fixed_point_rhs(const std::array<double, 6>& scalars,
                                      const SystemStatistics& stats,
                                      const AuxiliaryMatrices& aux);

/// rhs_k - e_k for each equation, literally on the given statistics
/// (no internal rescaling).
std::array<double, 6> fixed_point_residual(const std::array<double, 6>& scalars,
                                           const SystemStatistics& stats,
                                           const AuxiliaryMatrices& aux);
std::array<double, 6> fixed_point_residual(const std::array<double, 6>& scalars,
                                           const SystemStatistics& stats);

/// Damped fixed-point iteration from e_i = te_i = 1 (or the warm start).
/// A non-converged result is returned flagged, never silently used downstream.
FixedPointSolution solve_fixed_point(const SystemStatistics& stats,
                                     const FixedPointOptions& opts = {},
                                     const FixedPointSolution* warm_start = nullptr);

/// Large-system rate (nats internally, bits on the result) evaluated at the
/// converged fixed point of `stats`. Refuses non-converged solutions.
/// The breakdown holds the four log-det terms and the three bilinear terms.
RateResult asymptotic_rate(const SystemStatistics& stats, const FixedPointOptions& opts = {},
                           FixedPointSolution* solution_out = nullptr,
                           const FixedPointSolution* warm_start = nullptr);

/// Convergence diagnostics of the reduced closed forms below.
struct ReducedDiagnostics {
    std::array<double, 6> scalars{};  // used entries depend on the form
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Single-hop closed form: only the direct link is present.
RateResult rate_no_ris(const SystemStatistics& stats, const FixedPointOptions& opts = {},
                       ReducedDiagnostics* diag = nullptr);

/// Two-hop product-channel closed form: no direct link.
RateResult rate_no_direct(const SystemStatistics& stats, const FixedPointOptions& opts = {},
                          ReducedDiagnostics* diag = nullptr);

/// All-Rayleigh closed form (every LoS component zero).
RateResult rate_rayleigh(const SystemStatistics& stats, const FixedPointOptions& opts = {},
                         ReducedDiagnostics* diag = nullptr);

/// Deterministic equivalent of the Stieltjes transform
/// (1/K) tr (H2 H1 H1^H H2^H + omega I)^-1 of the two-hop Gram matrix,
/// evaluated from links 1 and 2 of `stats` at omega > 0.
double stieltjes_product(const SystemStatistics& stats, double omega,
                         const FixedPointOptions& opts = {},
                         ReducedDiagnostics* diag = nullptr);

}  // namespace rismimo

#endif
