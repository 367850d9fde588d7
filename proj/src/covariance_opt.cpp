// SPDX-License-Identifier: Apache-2.0

#include "rismimo/covariance_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rismimo/matrix_kernel.hpp"

namespace rismimo {

WaterfillingResult waterfill(const CMat& f, double budget) {
    if (!(budget > 0.0)) throw NumericalError("waterfill: budget must be positive");
    const int n = static_cast<int>(f.rows());
    const double scale = std::max(1e-300, f.cwiseAbs().maxCoeff());
    if (hermiticity_defect(f) > 1e-9 * scale) {
        throw NumericalError("waterfill: F must be Hermitian (symmetrize upstream)");
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig((f + f.adjoint()) / 2.0);
    if (eig.info() != Eigen::Success) throw NumericalError("waterfill: eigendecomposition failed");

    // Descending order.
    RVec lam(n);
    CMat u(n, n);
    for (int i = 0; i < n; ++i) {
        lam[i] = eig.eigenvalues()[n - 1 - i];
        u.col(i) = eig.eigenvectors().col(n - 1 - i);
    }
    const double lmax = lam.size() ? std::max(lam[0], 0.0) : 0.0;

    WaterfillingResult out;
    out.eigenvalues = lam;
    if (lmax <= 0.0) {
        // Nothing to pour power into; the rate is zero regardless of Q.
        out.degenerate = true;
        out.q = TransmitCovariance::uniform(n, budget);
        out.mu = double(n) / budget;
        out.active_count = 0;
        return out;
    }

    int usable = 0;
    while (usable < n && lam[usable] > 1e-12 * lmax) ++usable;

    // For the active set {1..m}: 1/mu = (budget + sum 1/lambda_k) / m. The set
    // is consistent when the weakest active mode still gets positive power and
    // the next mode would not.
    double mu = 0.0;
    int active = 0;
    double inv_sum = 0.0;
    for (int m = 1; m <= usable; ++m) {
        inv_sum += 1.0 / lam[m - 1];
        const double level = (budget + inv_sum) / m;  // 1/mu
        const bool weakest_ok = level > 1.0 / lam[m - 1];
        const bool next_off = (m == usable) || (level <= 1.0 / lam[m]);
        if (weakest_ok && next_off) {
            mu = 1.0 / level;
            active = m;
            break;
        }
    }
    if (active == 0) throw NumericalError("waterfill: no consistent active set (unexpected)");

    RVec p = RVec::Zero(n);
    for (int k = 0; k < active; ++k) p[k] = 1.0 / mu - 1.0 / lam[k];
    out.mu = mu;
    out.active_count = active;
    out.q.budget = budget;
    out.q.q = u * p.asDiagonal() * u.adjoint();
    // Exact Hermitian form regardless of roundoff in the reconstruction.
    out.q.q = (out.q.q + out.q.q.adjoint()) / 2.0;
    return out;
}

CovarianceOptResult optimize_covariance(const SystemStatistics& stats, const PhaseVector& theta,
                                        const TransmitCovariance& q_init,
                                        const CovarianceOptOptions& opts,
                                        const FixedPointSolution* warm_start) {
    stats.check_shapes();
    CovarianceOptResult out;
    TransmitCovariance q = q_init;
    q.budget = stats.power_budget;

    FixedPointSolution sol;
    const FixedPointSolution* warm = warm_start;
    double prev_rate = 0.0;
    for (int t = 0; t < opts.max_iterations; ++t) {
        const RateResult rate =
            deterministic_rate(stats, q, theta, opts.fixed_point, &sol, warm);
        warm = &sol;
        out.fp_iterations_total += sol.iterations;
        out.rate_trace_nats.push_back(rate.nats);
        out.iterations = t + 1;
        out.q = q;
        out.last_solution = sol;
        if (t > 0 && std::abs(rate.nats - prev_rate) < opts.epsilon) {
            out.converged = true;
            return out;
        }
        prev_rate = rate.nats;
        const FAssembly fa = assemble_F(stats, theta, sol);
        q = waterfill(fa.f, stats.power_budget).q;
    }
    // Cap exceeded; the best (= latest evaluated) iterate is already stored.
    out.converged = false;
    return out;
}

}  // namespace rismimo
