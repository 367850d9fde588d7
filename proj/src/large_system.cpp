// SPDX-License-Identifier: Apache-2.0

#include "rismimo/large_system.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "rismimo/matrix_kernel.hpp"

namespace rismimo {

namespace {

CMat eye(int n) { return CMat::Identity(n, n); }

double real_trace_of_product(const CMat& a, const CMat& b) {
    // tr(A B) without forming the product.
    return a.cwiseProduct(b.transpose()).sum().real();
}

/// Rescale the statistics so sigma2 == 1. The fixed point and the rate are
/// invariant; only the scalar parameterization changes:
///   e0, e1, e2 pick up a factor c = 1/sigma2 and te0, te1, te2 lose it.
struct ScaledSystem {
    SystemStatistics stats;
    double c = 1.0;

    std::array<double, 6> to_scaled(const std::array<double, 6>& x) const {
        return {x[0] * c, x[1] * c, x[2] * c, x[3] / c, x[4] / c, x[5] / c};
    }
    std::array<double, 6> to_original(const std::array<double, 6>& x) const {
        return {x[0] / c, x[1] / c, x[2] / c, x[3] * c, x[4] * c, x[5] * c};
    }
};

ScaledSystem rescale_noise(const SystemStatistics& in) {
    ScaledSystem out;
    out.c = 1.0 / in.sigma2;
    out.stats = in;
    out.stats.sigma2 = 1.0;
    out.stats.link0.t *= out.c;
    out.stats.link0.hbar *= std::sqrt(out.c);
    out.stats.link1.t *= out.c;
    out.stats.link1.hbar *= std::sqrt(out.c);
    return out;
}

/// Generic damped fixed-point driver shared by the full system and the
/// reduced closed forms. Scalars are projected onto [0, inf) after every
/// update; the damping factor is halved whenever the residual increases.
struct DampedResult {
    RVec x;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Convergence metric: entrywise |rhs_k - x_k| / max(1, |x_k|). Absolute for
/// small scalars, relative for large ones; a plain absolute residual would be
/// unreachable in double precision when a scalar runs to 1e4 and beyond.
double scaled_residual(const RVec& r, const RVec& x) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(r[i] - x[i]) / std::max(1.0, std::abs(x[i])));
    }
    return worst;
}

DampedResult damped_iteration(RVec x0, const std::function<RVec(const RVec&)>& rhs,
                              const FixedPointOptions& opts) {
    DampedResult out;
    RVec x = x0.cwiseMax(0.0);
    RVec best_x = x;
    double best_res = INFINITY;
    double prev_res = INFINITY;
    double alpha = opts.initial_damping;
    int decrease_streak = 0;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        const RVec r = rhs(x);
        const double res = scaled_residual(r, x);
        if (res < best_res) {
            best_res = res;
            best_x = x;
        }
        if (res < opts.tol && alpha * res < opts.update_tol) {
            out.x = x;
            out.iterations = iter;
            out.residual = res;
            out.converged = true;
            return out;
        }
        if (res > prev_res) {
            alpha = std::max(alpha / 2.0, opts.min_damping);
            decrease_streak = 0;
        } else if (++decrease_streak >= 10) {
            // Cautious recovery once the iteration has settled; otherwise a
            // single early oscillation pins the step size at the floor.
            alpha = std::min(alpha * 2.0, opts.initial_damping);
            decrease_streak = 0;
        }
        prev_res = res;
        x = (x + alpha * (r - x)).cwiseMax(0.0);
    }
    out.x = best_x;
    out.iterations = opts.max_iterations;
    out.residual = best_res;
    out.converged = false;
    return out;
}

std::array<double, 6> to_array6(const RVec& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

}  // namespace

AuxiliaryMatrices assemble_auxiliary(const std::array<double, 6>& scalars,
                                     const SystemStatistics& stats) {
    const int n = stats.dims.n, l = stats.dims.l, k = stats.dims.k;
    // Tiny negatives from roundoff are clamped before assembly.
    const double e0 = std::max(scalars[0], 0.0);
    const double e1 = std::max(scalars[1], 0.0);
    const double e2 = std::max(scalars[2], 0.0);
    const double te0 = std::max(scalars[3], 0.0);
    const double te1 = std::max(scalars[4], 0.0);
    const double te2 = std::max(scalars[5], 0.0);
    const CMat& r0 = stats.link0.r;
    const CMat& t0 = stats.link0.t;
    const CMat& hb0 = stats.link0.hbar;
    const CMat& r1 = stats.link1.r;
    const CMat& t1 = stats.link1.t;
    const CMat& hb1 = stats.link1.hbar;
    const CMat& r2 = stats.link2.r;
    const CMat& t2 = stats.link2.t;
    const CMat& hb2 = stats.link2.hbar;

    AuxiliaryMatrices a;
    a.phi2 = stats.sigma2 * eye(k) + e2 * r2;
    a.inv_phi2 = solve_general(a.phi2, eye(k), "Phi2");
    a.psi2 = hb2.adjoint() * a.inv_phi2 * hb2 + te2 * t2;
    a.phi1 = eye(l) + e1 * a.psi2 * r1;
    a.inv_phi1 = solve_general(a.phi1, eye(l), "Phi1");
    a.psi1 = a.inv_phi2 * (eye(k) - e1 * hb2 * r1 * a.inv_phi1 * hb2.adjoint() * a.inv_phi2);
    a.phi0 = eye(k) + e0 * a.psi1 * r0;
    a.inv_phi0 = solve_general(a.phi0, eye(k), "Phi0");
    const CMat inv_phi1_h = a.inv_phi1.adjoint();  // Phi1^-H
    a.psi0 = a.psi1 * hb0 + a.inv_phi2 * hb2 * inv_phi1_h * hb1;
    a.xi0 = hb0 - e0 * r0 * a.inv_phi0 * a.psi0;
    a.omega = hb1.adjoint() * a.inv_phi1 * a.psi2 * hb1 + a.psi0.adjoint() * a.xi0 +
              hb0.adjoint() * a.inv_phi2 * hb2 * inv_phi1_h * hb1 + te0 * t0 + te1 * t1;

    const CMat eye_omega = eye(n) + a.omega;
    a.eye_omega_inv = solve_general(eye_omega, eye(n), "I+Omega");
    a.eye_omega_inv_sqrt = principal_inv_sqrt(eye_omega, "I+Omega");

    // e R Phi^-1 equals (R^-1 + e Psi)^-1 in exact arithmetic, so it is
    // Hermitian PSD up to roundoff; take the (much cheaper) Hermitian root
    // when the defect confirms that, with the general principal root as the
    // fallback.
    auto psd_product_sqrt = [](const CMat& m, const char* label) {
        const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
        if (hermiticity_defect(m) <= 1e-11 * scale) return hermitian_sqrt((m + m.adjoint()) / 2.0);
        return principal_sqrt(m, label);
    };
    const CMat sqrt_r0phi0 = psd_product_sqrt(CMat(e0 * r0 * a.inv_phi0), "e0 R0 Phi0^-1");
    const CMat sqrt_r1phi1 = psd_product_sqrt(CMat(e1 * r1 * a.inv_phi1), "e1 R1 Phi1^-1");

    a.pi01 = a.inv_phi0 * a.psi0 * a.eye_omega_inv_sqrt;
    a.pi11 = a.inv_phi1 * hb2.adjoint() * a.inv_phi2 * sqrt_r0phi0;
    a.pi12 = a.inv_phi1 * (a.psi2 * hb1 + hb2.adjoint() * a.inv_phi2 * a.xi0) * a.eye_omega_inv_sqrt;
    a.pi21 = (inv_phi1_h * hb1 - e1 * r1 * a.inv_phi1 * hb2.adjoint() * a.inv_phi2 * a.xi0) *
             a.eye_omega_inv_sqrt;
    a.pi31 = a.inv_phi2 * hb2 * sqrt_r1phi1;
    a.pi32 = a.psi1 * sqrt_r0phi0;
    a.pi33 = (a.inv_phi2 * hb2 * inv_phi1_h * hb1 + a.psi1 * a.xi0) * a.eye_omega_inv_sqrt;
    return a;
}

std::array<double, 6> fixed_point_rhs(const std::array<double, 6>& scalars,
                                      const SystemStatistics& stats,
                                      const AuxiliaryMatrices& aux) {
    const int n = stats.dims.n, l = stats.dims.l;
    const double e1 = std::max(scalars[1], 0.0);
    const CMat& r0 = stats.link0.r;
    const CMat& r1 = stats.link1.r;
    const CMat& r2 = stats.link2.r;

    std::array<double, 6> rhs;
    rhs[0] = real_trace_of_product(aux.eye_omega_inv, stats.link0.t) / n;
    rhs[1] = real_trace_of_product(aux.eye_omega_inv, stats.link1.t) / n;
    const CMat e2_kernel = e1 * r1 * aux.inv_phi1 +
                           e1 * e1 * r1 * aux.pi11 * aux.pi11.adjoint() * r1 +
                           aux.pi21 * aux.pi21.adjoint();
    rhs[2] = real_trace_of_product(e2_kernel, stats.link2.t) / l;
    const CMat te0_kernel = aux.inv_phi0 * aux.psi1 - aux.pi01 * aux.pi01.adjoint();
    rhs[3] = real_trace_of_product(te0_kernel, r0) / n;
    const CMat te1_kernel = aux.inv_phi1 * aux.psi2 - aux.pi11 * aux.pi11.adjoint() -
                            aux.pi12 * aux.pi12.adjoint();
    rhs[4] = real_trace_of_product(te1_kernel, r1) / n;
    const CMat te2_kernel = aux.inv_phi2 - aux.pi31 * aux.pi31.adjoint() -
                            aux.pi32 * aux.pi32.adjoint() - aux.pi33 * aux.pi33.adjoint();
    rhs[5] = real_trace_of_product(te2_kernel, r2) / l;
    return rhs;
}

std::array<double, 6> fixed_point_residual(const std::array<double, 6>& scalars,
                                           const SystemStatistics& stats,
                                           const AuxiliaryMatrices& aux) {
    const std::array<double, 6> rhs = fixed_point_rhs(scalars, stats, aux);
    std::array<double, 6> res;
    for (int i = 0; i < 6; ++i) res[i] = rhs[i] - scalars[i];
    return res;
}

std::array<double, 6> fixed_point_residual(const std::array<double, 6>& scalars,
                                           const SystemStatistics& stats) {
    return fixed_point_residual(scalars, stats, assemble_auxiliary(scalars, stats));
}

FixedPointSolution solve_fixed_point(const SystemStatistics& stats, const FixedPointOptions& opts,
                                     const FixedPointSolution* warm_start) {
    stats.check_shapes();
    const ScaledSystem sys = rescale_noise(stats);

    RVec x0(6);
    if (warm_start) {
        const auto w = sys.to_scaled(warm_start->scalars());
        for (int i = 0; i < 6; ++i) x0[i] = w[i];
    } else {
        x0.setOnes();
    }
    auto rhs = [&sys](const RVec& x) -> RVec {
        const std::array<double, 6> xa = to_array6(x);
        const auto r = fixed_point_rhs(xa, sys.stats, assemble_auxiliary(xa, sys.stats));
        RVec out(6);
        for (int i = 0; i < 6; ++i) out[i] = r[i];
        return out;
    };
    const DampedResult dr = damped_iteration(x0, rhs, opts);

    FixedPointSolution sol = FixedPointSolution::from_scalars(sys.to_original(to_array6(dr.x)));
    sol.iterations = dr.iterations;
    sol.residual = dr.residual;
    sol.converged = dr.converged;
    return sol;
}

RateResult asymptotic_rate(const SystemStatistics& stats, const FixedPointOptions& opts,
                           FixedPointSolution* solution_out, const FixedPointSolution* warm_start) {
    const FixedPointSolution sol = solve_fixed_point(stats, opts, warm_start);
    if (solution_out) *solution_out = sol;
    if (!sol.converged) {
        std::ostringstream os;
        os << "asymptotic_rate: fixed point not converged after " << sol.iterations
           << " iterations (residual " << sol.residual << ")";
        throw NumericalError(os.str());
    }

    // Evaluate on the noise-rescaled system; every term is invariant.
    const ScaledSystem sys = rescale_noise(stats);
    const auto x = sys.to_scaled(sol.scalars());
    const AuxiliaryMatrices aux = assemble_auxiliary(x, sys.stats);
    const int n = sys.stats.dims.n, l = sys.stats.dims.l, k = sys.stats.dims.k;

    RateResult rr;
    rr.provenance = RateResult::Provenance::kAnalytic;
    rr.terms_nats.resize(7);
    rr.terms_nats[0] =
        logdet_hpd(eye(k) + (x[2] / sys.stats.sigma2) * sys.stats.link2.r);
    rr.terms_nats[1] =
        logdet_real(eye(l) + x[1] * aux.psi2 * sys.stats.link1.r, "I + e1 Psi2 R1");
    rr.terms_nats[2] =
        logdet_real(eye(k) + x[0] * aux.psi1 * sys.stats.link0.r, "I + e0 Psi1 R0");
    rr.terms_nats[3] = logdet_real(eye(n) + aux.omega, "I + Omega");
    rr.terms_nats[4] = -double(n) * x[0] * x[3];
    rr.terms_nats[5] = -double(n) * x[1] * x[4];
    rr.terms_nats[6] = -double(l) * x[2] * x[5];
    rr.nats = 0.0;
    for (double t : rr.terms_nats) rr.nats += t;
    return rr;
}

// ---------------------------------------------------------------------------
// Reduced closed forms.
// ---------------------------------------------------------------------------

namespace {

void require_converged(const DampedResult& dr, const char* who) {
    if (!dr.converged) {
        std::ostringstream os;
        os << who << ": fixed point not converged (residual " << dr.residual << ")";
        throw NumericalError(os.str());
    }
}

void fill_diag(ReducedDiagnostics* diag, const std::array<double, 6>& scalars,
               const DampedResult& dr) {
    if (!diag) return;
    diag->scalars = scalars;
    diag->iterations = dr.iterations;
    diag->residual = dr.residual;
    diag->converged = dr.converged;
}

}  // namespace

RateResult rate_no_ris(const SystemStatistics& stats, const FixedPointOptions& opts,
                       ReducedDiagnostics* diag) {
    const int n = stats.dims.n, k = stats.dims.k;
    const double c = 1.0 / stats.sigma2;
    const CMat t0 = c * stats.link0.t;
    const CMat hb0 = std::sqrt(c) * stats.link0.hbar;
    const CMat& r0 = stats.link0.r;
    const double s2 = 1.0;

    auto inner = [&](double e0, double te0) {
        return CMat(eye(n) + te0 * t0 +
                    hb0.adjoint() * solve_general(s2 * eye(k) + e0 * r0, hb0, "sigma2 I + e0 R0"));
    };
    auto rhs = [&](const RVec& x) -> RVec {
        const double e0 = x[0], te0 = x[1];
        RVec out(2);
        out[0] = real_trace_of_product(
                     solve_general(inner(e0, te0), eye(n), "single-hop inner"), t0) /
                 n;
        const CMat w = s2 * eye(k) + e0 * r0 +
                       hb0 * solve_general(eye(n) + te0 * t0, hb0.adjoint(), "I + te0 T0");
        out[1] = real_trace_of_product(solve_general(w, eye(k), "single-hop dual"), r0) / n;
        return out;
    };
    const DampedResult dr = damped_iteration(RVec::Ones(2), rhs, opts);
    const double e0 = dr.x[0], te0 = dr.x[1];
    fill_diag(diag, {e0 / c, 0, 0, te0 * c, 0, 0}, dr);
    require_converged(dr, "rate_no_ris");

    RateResult rr;
    rr.provenance = RateResult::Provenance::kAnalytic;
    rr.terms_nats = {logdet_hpd(eye(k) + (e0 / s2) * r0), logdet_hpd(inner(e0, te0)),
                     -double(n) * e0 * te0};
    rr.nats = rr.terms_nats[0] + rr.terms_nats[1] + rr.terms_nats[2];
    return rr;
}

namespace {

/// Shared core of the no-direct-link closed form and the Stieltjes transform:
/// solve the four-scalar system for links 1 and 2 with noise parameter
/// `noise` in place of sigma2.
struct NoDirectSystem {
    const SystemStatistics& stats;
    double noise;

    struct Assembled {
        CMat inv_phi2, psi2, phi1, inv_phi1, g, pipih;
    };

    Assembled assemble(double e1, double e2, double te1, double te2) const {
        const int n = stats.dims.n, l = stats.dims.l, k = stats.dims.k;
        (void)n;
        Assembled a;
        const CMat phi2 = noise * CMat::Identity(k, k) + e2 * stats.link2.r;
        a.inv_phi2 = solve_general(phi2, CMat::Identity(k, k), "Phi2");
        a.psi2 = stats.link2.hbar.adjoint() * a.inv_phi2 * stats.link2.hbar + te2 * stats.link2.t;
        a.phi1 = CMat::Identity(l, l) + e1 * a.psi2 * stats.link1.r;
        a.inv_phi1 = solve_general(a.phi1, CMat::Identity(l, l), "Phi1");
        a.g = CMat::Identity(stats.dims.n, stats.dims.n) +
              stats.link1.hbar.adjoint() * a.inv_phi1 * a.psi2 * stats.link1.hbar +
              te1 * stats.link1.t;
        const CMat pi = a.inv_phi1.adjoint() * stats.link1.hbar * principal_inv_sqrt(a.g, "G");
        a.pipih = pi * pi.adjoint();
        return a;
    }

    RVec rhs(const RVec& x) const {
        const int n = stats.dims.n, l = stats.dims.l;
        const double e1 = x[0], e2 = x[1], te1 = x[2], te2 = x[3];
        const Assembled a = assemble(e1, e2, te1, te2);
        const CMat& r1 = stats.link1.r;
        const CMat& r2 = stats.link2.r;
        const CMat& hb2 = stats.link2.hbar;
        RVec out(4);
        out[0] = real_trace_of_product(solve_general(a.g, CMat::Identity(n, n), "G"),
                                       stats.link1.t) /
                 n;
        out[1] = real_trace_of_product(CMat(e1 * r1 * a.inv_phi1 + a.pipih), stats.link2.t) / l;
        out[2] = real_trace_of_product(CMat(a.inv_phi1 * a.psi2 - a.psi2 * a.pipih * a.psi2), r1) /
                 n;
        const CMat w = a.inv_phi2 * hb2;
        out[3] = real_trace_of_product(
                     CMat(a.inv_phi2 - e1 * w * r1 * a.inv_phi1 * w.adjoint() -
                          w * a.pipih * w.adjoint()),
                     r2) /
                 l;
        return out;
    }
};

}  // namespace

RateResult rate_no_direct(const SystemStatistics& stats, const FixedPointOptions& opts,
                          ReducedDiagnostics* diag) {
    const int n = stats.dims.n, l = stats.dims.l, k = stats.dims.k;
    const double c = 1.0 / stats.sigma2;
    SystemStatistics scaled = stats;
    scaled.sigma2 = 1.0;
    scaled.link1.t *= c;
    scaled.link1.hbar *= std::sqrt(c);

    const NoDirectSystem sys{scaled, scaled.sigma2};
    const DampedResult dr =
        damped_iteration(RVec::Ones(4), [&sys](const RVec& x) { return sys.rhs(x); }, opts);
    const double e1 = dr.x[0], e2 = dr.x[1], te1 = dr.x[2], te2 = dr.x[3];
    fill_diag(diag, {0, e1 / c, e2 / c, 0, te1 * c, te2 * c}, dr);
    require_converged(dr, "rate_no_direct");

    const NoDirectSystem::Assembled a = sys.assemble(e1, e2, te1, te2);
    RateResult rr;
    rr.provenance = RateResult::Provenance::kAnalytic;
    rr.terms_nats = {logdet_hpd(eye(k) + (e2 / scaled.sigma2) * scaled.link2.r),
                     logdet_real(eye(l) + e1 * a.psi2 * scaled.link1.r, "I + e1 Psi2 R1"),
                     logdet_real(a.g, "product-channel inner"),
                     -double(n) * e1 * te1, -double(l) * e2 * te2};
    rr.nats = 0.0;
    for (double t : rr.terms_nats) rr.nats += t;
    return rr;
}

double stieltjes_product(const SystemStatistics& stats, double omega, const FixedPointOptions& opts,
                         ReducedDiagnostics* diag) {
    if (!(omega > 0.0)) throw NumericalError("stieltjes_product: omega must be positive");
    const int k = stats.dims.k;
    const double c = 1.0 / omega;
    SystemStatistics scaled = stats;
    scaled.sigma2 = 1.0;  // unused by the system below
    scaled.link1.t *= c;
    scaled.link1.hbar *= std::sqrt(c);

    const NoDirectSystem sys{scaled, 1.0};
    const DampedResult dr =
        damped_iteration(RVec::Ones(4), [&sys](const RVec& x) { return sys.rhs(x); }, opts);
    fill_diag(diag, {0, dr.x[0] / c, dr.x[1] / c, 0, dr.x[2] * c, dr.x[3] * c}, dr);
    require_converged(dr, "stieltjes_product");

    const double e2 = dr.x[1] / c;  // back in original units
    const CMat b = e2 * stats.link2.r + omega * CMat::Identity(k, k);
    return solve_general(b, CMat::Identity(k, k), "e2 R2 + omega I").trace().real() / k;
}

RateResult rate_rayleigh(const SystemStatistics& stats, const FixedPointOptions& opts,
                         ReducedDiagnostics* diag) {
    const double los = stats.link0.hbar.cwiseAbs().maxCoeff() +
                       stats.link1.hbar.cwiseAbs().maxCoeff() +
                       stats.link2.hbar.cwiseAbs().maxCoeff();
    if (los > 0.0) throw NumericalError("rate_rayleigh: nonzero LoS component");
    const int n = stats.dims.n, l = stats.dims.l, k = stats.dims.k;
    const double c = 1.0 / stats.sigma2;
    const CMat t0 = c * stats.link0.t;
    const CMat t1 = c * stats.link1.t;
    const CMat& t2 = stats.link2.t;
    const CMat& r0 = stats.link0.r;
    const CMat& r1 = stats.link1.r;
    const CMat& r2 = stats.link2.r;
    const double s2 = 1.0;
    const double ratio = double(l) / double(n);

    auto rhs = [&](const RVec& x) -> RVec {
        const double e0 = x[0], e1 = x[1], e2 = x[2], te0 = x[3], te2 = x[4];
        RVec out(5);
        const CMat a = eye(n) + te0 * t0 + ratio * e2 * te2 * t1;
        const CMat ainv = solve_general(a, eye(n), "Rayleigh inner");
        out[0] = real_trace_of_product(ainv, t0) / n;
        out[1] = real_trace_of_product(ainv, t1) / n;
        const CMat t2r1 = t2 * r1;
        out[2] =
            solve_general(CMat(eye(l) + e1 * te2 * t2r1), t2r1, "I + e1 te2 T2 R1").trace().real() /
            l;
        const CMat cc = s2 * eye(k) + e0 * r0 + e1 * e2 * r2;
        const CMat cinv = solve_general(cc, eye(k), "Rayleigh dual");
        out[3] = real_trace_of_product(cinv, r0) / n;
        out[4] = real_trace_of_product(cinv, r2) / l;
        return out;
    };
    const DampedResult dr = damped_iteration(RVec::Ones(5), rhs, opts);
    const double e0 = dr.x[0], e1 = dr.x[1], e2 = dr.x[2], te0 = dr.x[3], te2 = dr.x[4];
    fill_diag(diag, {e0 / c, e1 / c, e2, te0 * c, 0, te2 * c}, dr);
    require_converged(dr, "rate_rayleigh");

    RateResult rr;
    rr.provenance = RateResult::Provenance::kAnalytic;
    rr.terms_nats = {
        logdet_hpd(eye(k) + (e1 * e2 / s2) * r2),
        logdet_real(
            eye(k) + e0 * solve_general(CMat(s2 * eye(k) + e1 * e2 * r2), r0,
                                        "sigma2 I + e1 e2 R2"),
            "I + e0 (sigma2 I + e1 e2 R2)^-1 R0"),
        logdet_real(eye(l) + e1 * te2 * t2 * r1, "I + e1 te2 T2 R1"),
        logdet_hpd(eye(n) + te0 * t0 + ratio * e2 * te2 * t1),
        -double(n) * e0 * te0,
        -2.0 * double(l) * e1 * e2 * te2};
    rr.nats = 0.0;
    for (double t : rr.terms_nats) rr.nats += t;
    return rr;
}

}  // namespace rismimo
