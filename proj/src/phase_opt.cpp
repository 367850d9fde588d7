// SPDX-License-Identifier: Apache-2.0

#include "rismimo/phase_opt.hpp"

#include <cmath>
#include <sstream>

#include "detail_f_context.hpp"
#include "rismimo/matrix_kernel.hpp"
#include "rismimo/parallel.hpp"

namespace rismimo {

namespace {

using detail::FContext;

Complex trace_of_product(const CMat& a, const CMat& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

/// Shared per-call factors of the derivative; everything here is independent
/// of the element index l.
struct GradientShared {
    FContext ctx;
    CVec phasors;
    CMat g;        // Q (I + F Q)^-1
    CMat p;        // R1 F1^-1
    CMat w2;       // Phi2^-1 Hbar2
    CMat w2h;      // Hbar2^H Phi2^-1
    CMat d0;       // R0 (I + e0 F2 R0)^-1
    CMat c0;       // Hbar2^H Phi2^-1 Hbar0
    CMat x;        // Theta^H M Theta
    CMat thhm;     // Theta^H M
    CMat mth;      // M Theta
    // fast-path contraction tables
    CMat s1;       // P X Hbar1,        L x N
    CMat s2;       // P Theta^H C0,     L x N
    CMat s3;       // P Theta^H W2h,    L x K
    CMat t6;       // Hbar0^H W2 Theta P^H,  N x L
    CMat t7;       // Hbar0^H W2,       N x L
    CMat t9;       // W2 Theta P^H,     K x L
    CMat thp;      // Theta P
    CMat w2thp;    // W2 Theta P
    CMat pthhw;    // P Theta^H W2h,    L x K (same as s3; kept for the F4 kernel)
    CMat pthhm;    // P Theta^H M
    CMat mthp;     // M Theta P
    CMat ld;       // e0 * left * d0,   N x K
    CMat dr;       // e0 * d0 * right,  K x N
    CMat ld0;      // left * d0
    CMat d0r;      // d0 * right
};

GradientShared make_shared_factors(const SystemStatistics& stats, const TransmitCovariance& q,
                                   const PhaseVector& theta, const FixedPointSolution& scalars) {
    GradientShared sh;
    sh.ctx = detail::make_f_context(stats, theta, scalars);
    const FContext& ctx = sh.ctx;
    const int n = stats.dims.n, k = stats.dims.k;
    const double e0 = ctx.x[0];

    sh.phasors = theta.phasors();
    sh.g = q.q * solve_general(CMat(CMat::Identity(n, n) + ctx.f * q.q), CMat::Identity(n, n),
                               "I + F Q");
    sh.p = ctx.sc.link1.r * ctx.inv_f1;
    sh.w2 = ctx.inv_phi2 * ctx.sc.link2.hbar;
    sh.w2h = ctx.sc.link2.hbar.adjoint() * ctx.inv_phi2;
    sh.d0 = ctx.sc.link0.r *
            solve_general(CMat(CMat::Identity(k, k) + e0 * ctx.f2 * ctx.sc.link0.r),
                          CMat::Identity(k, k), "I + e0 F2 R0");
    sh.c0 = sh.w2h * ctx.sc.link0.hbar;
    sh.thhm = ctx.th.adjoint() * ctx.m;
    sh.mth = ctx.m * ctx.th;
    sh.x = sh.thhm * ctx.th;

    sh.s1 = sh.p * sh.x * ctx.sc.link1.hbar;
    sh.s2 = sh.p * ctx.th.adjoint() * sh.c0;
    sh.s3 = sh.p * ctx.th.adjoint() * sh.w2h;
    sh.t7 = ctx.sc.link0.hbar.adjoint() * sh.w2;
    sh.t6 = sh.t7 * ctx.th * sh.p.adjoint();
    sh.t9 = sh.w2 * ctx.th * sh.p.adjoint();
    sh.thp = ctx.th * sh.p;
    sh.w2thp = sh.w2 * sh.thp;
    sh.pthhw = sh.s3;
    sh.pthhm = sh.p * sh.thhm;
    sh.mthp = sh.mth * sh.p;
    sh.ld = e0 * ctx.left * sh.d0;
    sh.dr = e0 * sh.d0 * ctx.right;
    sh.ld0 = ctx.left * sh.d0;
    sh.d0r = sh.d0 * ctx.right;
    return sh;
}

/// Straight transcription with explicit selector matrices; one dense chain
/// per element. Kept as the reference the structured kernel is tested against.
Complex gradient_element_dense(const GradientShared& sh, int l) {
    const FContext& ctx = sh.ctx;
    const int ldim = static_cast<int>(ctx.sc.link1.r.rows());
    const double e0 = ctx.x[0], e1 = ctx.x[1];
    const Complex vl = sh.phasors[l];
    const Complex vinv2 = 1.0 / (vl * vl);
    const CMat& hb0 = ctx.sc.link0.hbar;
    const CMat& hb1 = ctx.sc.link1.hbar;

    CMat e_ll = CMat::Zero(ldim, ldim);
    e_ll(l, l) = 1.0;

    const CMat f3 = sh.thhm * e_ll - vinv2 * e_ll * sh.mth;
    const CMat inner = vinv2 * ctx.th * sh.p * e_ll - e_ll * sh.p * ctx.th.adjoint() +
                       e1 * ctx.th * sh.p * f3 * sh.p * ctx.th.adjoint();
    const CMat f4 = e1 * sh.w2 * inner * sh.w2h;

    const CMat u1f3 = ctx.u1 * f3;
    CMat b = -e1 * u1f3 * sh.p * sh.x * hb1;
    b += u1f3 * hb1;
    b += hb0.adjoint() * f4 * hb0;
    b += -e1 * u1f3 * sh.p * ctx.th.adjoint() * sh.c0;
    b += -vinv2 * ctx.u1 * e_ll * sh.c0;
    b += -e1 * sh.t7 * ctx.th * sh.p.adjoint() * f3 * ctx.v1;
    b += sh.t7 * e_ll * ctx.v1;
    const CMat left_l = hb0.adjoint() * f4 - e1 * u1f3 * sh.p * ctx.th.adjoint() * sh.w2h -
                        vinv2 * ctx.u1 * e_ll * sh.w2h;
    b += -left_l * sh.dr;
    const CMat right_l = f4 * hb0 - e1 * sh.w2 * ctx.th * sh.p.adjoint() * f3 * ctx.v1 +
                         sh.w2 * e_ll * ctx.v1;
    b += -sh.ld * right_l;
    b += (e0 * e0) * sh.ld0 * f4 * sh.d0r;

    Complex out = e1 * trace_of_product(sh.p, f3);
    out += e0 * trace_of_product(sh.d0, f4);
    out += trace_of_product(sh.g, b);
    return out;
}

/// Structured kernel: the selector matrix makes F3 rank-2 and F4 a short sum
/// of outer products, so each element costs O(L (N + K)) after the shared
/// tables.
Complex gradient_element_fast(const GradientShared& sh, int l) {
    const FContext& ctx = sh.ctx;
    const int n = static_cast<int>(ctx.sc.link0.t.rows());
    const double e0 = ctx.x[0], e1 = ctx.x[1];
    const Complex vl = sh.phasors[l];
    const Complex vinv2 = 1.0 / (vl * vl);
    const CMat& hb0 = ctx.sc.link0.hbar;
    const CMat& hb1 = ctx.sc.link1.hbar;

    // F3 = u e_l^T - vinv2 e_l v^T with u = (Theta^H M) col l, v^T = (M Theta) row l.
    const CVec u = sh.thhm.col(l);
    const auto vrow = sh.mth.row(l);

    // F4 from rank-one pieces of the inner bracket.
    const CVec w2thp_u = sh.w2thp * u;
    const auto pthhw_l = sh.pthhw.row(l);
    const Eigen::RowVectorXcd v_pthhw = vrow * sh.pthhw;
    CMat f4 = vinv2 * sh.w2thp.col(l) * sh.w2h.row(l);
    f4 -= sh.w2.col(l) * pthhw_l;
    f4 += e1 * (w2thp_u * pthhw_l - vinv2 * sh.w2thp.col(l) * v_pthhw);
    f4 *= e1;

    // U1 F3 as a pair of rank-one factors.
    const CVec u1u = ctx.u1 * u;
    const CVec u1l = ctx.u1.col(l);

    CMat b = CMat::Zero(n, n);
    // b1: -e1 U1 F3 (P X Hbar1)
    b -= e1 * (u1u * sh.s1.row(l) - vinv2 * u1l * (vrow * sh.s1));
    // b2: U1 F3 Hbar1
    b += u1u * hb1.row(l) - vinv2 * u1l * (vrow * hb1);
    // b3
    b += hb0.adjoint() * f4 * hb0;
    // b4: -e1 U1 F3 (P Theta^H C0)
    b -= e1 * (u1u * sh.s2.row(l) - vinv2 * u1l * (vrow * sh.s2));
    // b5
    b -= vinv2 * u1l * sh.c0.row(l);
    // b6: -e1 T6 F3 V1
    const CVec t6u = sh.t6 * u;
    b -= e1 * (t6u * ctx.v1.row(l) - vinv2 * sh.t6.col(l) * (vrow * ctx.v1));
    // b7
    b += sh.t7.col(l) * ctx.v1.row(l);
    // b8: -(Hbar0^H F4 - e1 U1 F3 S3 - vinv2 U1 E S3') (e0 d0) right
    CMat left_l = hb0.adjoint() * f4;
    left_l -= e1 * (u1u * sh.s3.row(l) - vinv2 * u1l * (vrow * sh.s3));
    left_l -= vinv2 * u1l * sh.w2h.row(l);
    b -= left_l * sh.dr;
    // b9
    const CVec t9u = sh.t9 * u;
    CMat right_l = f4 * hb0;
    right_l -= e1 * (t9u * ctx.v1.row(l) - vinv2 * sh.t9.col(l) * (vrow * ctx.v1));
    right_l += sh.w2.col(l) * ctx.v1.row(l);
    b -= sh.ld * right_l;
    // b10
    b += (e0 * e0) * sh.ld0 * f4 * sh.d0r;

    Complex out = e1 * (sh.pthhm(l, l) - vinv2 * sh.mthp(l, l));
    out += e0 * trace_of_product(sh.d0, f4);
    out += trace_of_product(sh.g, b);
    return out;
}

void require_converged_scalars(const FixedPointSolution& scalars) {
    if (!scalars.converged) {
        throw NumericalError("phase_gradient: fixed point not converged at evaluation point");
    }
}

}  // namespace

PhaseGradient phase_gradient(const SystemStatistics& stats, const TransmitCovariance& q,
                             const PhaseVector& theta, const FixedPointSolution& scalars,
                             int workers) {
    require_converged_scalars(scalars);
    const GradientShared sh = make_shared_factors(stats, q, theta, scalars);
    PhaseGradient out;
    out.at_angles = theta.angles();
    out.p.resize(theta.size());
    parallel_for(theta.size(), workers,
                 [&](std::ptrdiff_t l) { out.p[l] = gradient_element_fast(sh, static_cast<int>(l)); });
    return out;
}

PhaseGradient phase_gradient_reference(const SystemStatistics& stats, const TransmitCovariance& q,
                                       const PhaseVector& theta,
                                       const FixedPointSolution& scalars) {
    require_converged_scalars(scalars);
    const GradientShared sh = make_shared_factors(stats, q, theta, scalars);
    PhaseGradient out;
    out.at_angles = theta.angles();
    out.p.resize(theta.size());
    for (int l = 0; l < theta.size(); ++l) out.p[l] = gradient_element_dense(sh, l);
    return out;
}

PhaseVector projected_step(const PhaseVector& theta, const CVec& p, double step) {
    if (!(step > 0.0)) throw NumericalError("projected_step: step must be positive");
    if (p.size() != theta.size()) throw NumericalError("projected_step: gradient size mismatch");
    const CVec v = theta.phasors();
    RVec out(theta.size());
    for (int l = 0; l < theta.size(); ++l) {
        const Complex z = v[l] + step * p[l];
        out[l] = (z == Complex(0.0, 0.0)) ? theta.angles()[l] : std::arg(z);
    }
    return PhaseVector(std::move(out));
}

PhaseOptResult optimize_phases(const SystemStatistics& stats, const TransmitCovariance& q,
                               const PhaseVector& theta_init, const PhaseOptOptions& opts,
                               const FixedPointSolution* warm_start) {
    stats.check_shapes();
    PhaseOptResult out;
    out.theta = theta_init;

    FixedPointSolution sol;
    RateResult rate =
        deterministic_rate(stats, q, theta_init, opts.fixed_point, &sol, warm_start);
    out.fp_iterations_total += sol.iterations;
    out.rate_trace_nats.push_back(rate.nats);
    out.last_solution = sol;

    PhaseVector theta = theta_init;
    // The raw ascent direction is normalized by the gradient scale so that
    // `step_angle` is the angular move of the strongest element. A fixed raw
    // step stalls whenever the reflected path sits many dB below the direct
    // link (tiny gradients, sub-epsilon gains per step). The angle is halved
    // while a step loses rate and doubled after a clean success.
    double step_angle = opts.step;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        out.iterations = iter;
        const PhaseGradient grad = phase_gradient(stats, q, theta, sol, opts.workers);
        const double pmax = grad.p.cwiseAbs().maxCoeff();
        // A gradient at arithmetic-noise scale means the rate does not depend
        // on the phases (to double precision); normalizing the step by it
        // would turn roundoff into a full-size move.
        if (pmax <= 1e-12 * std::max(1.0, std::abs(rate.nats))) {
            out.converged = true;
            break;
        }
        // The derivative treats the conjugate phasor as the reciprocal, which
        // makes p * phasor purely imaginary; the ascent direction of the
        // projected update is the conjugate of p (first-order angle change
        // Im(conj(p) conj(phasor)) = dRate/dtheta, always uphill).
        const CVec direction = grad.p.conjugate();
        bool accepted = false;
        int halvings = 0;
        PhaseVector cand = theta;
        FixedPointSolution cand_sol;
        RateResult cand_rate;
        for (; halvings <= opts.max_halvings; ++halvings) {
            cand = projected_step(theta, direction, step_angle / pmax);
            cand_rate = deterministic_rate(stats, q, cand, opts.fixed_point, &cand_sol, &sol);
            out.fp_iterations_total += cand_sol.iterations;
            if (cand_rate.nats >= rate.nats) {
                accepted = true;
                break;
            }
            step_angle /= 2.0;
        }
        if (!accepted) {
            // No uphill step within the backtracking budget: local optimum.
            out.converged = true;
            break;
        }
        if (halvings == 0) step_angle = std::min(step_angle * 2.0, M_PI);
        const double delta = cand_rate.nats - rate.nats;
        theta = cand;
        sol = cand_sol;
        rate = cand_rate;
        out.rate_trace_nats.push_back(rate.nats);
        out.theta = theta;
        out.last_solution = sol;
        if (delta < opts.epsilon) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace rismimo
