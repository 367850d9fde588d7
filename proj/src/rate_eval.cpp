// SPDX-License-Identifier: Apache-2.0

#include "rismimo/rate_eval.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "detail_f_context.hpp"
#include "rismimo/matrix_kernel.hpp"
#include "rismimo/parallel.hpp"

namespace rismimo {

TransmitCovariance TransmitCovariance::uniform(int n, double budget_total) {
    TransmitCovariance tc;
    tc.budget = budget_total;
    tc.q = (budget_total / n) * CMat::Identity(n, n);
    return tc;
}

void TransmitCovariance::validate() const {
    if (q.rows() != q.cols()) throw NumericalError("TransmitCovariance: Q not square");
    const double scale = std::max(1e-300, q.cwiseAbs().maxCoeff());
    if (hermiticity_defect(q) > 1e-9 * scale) {
        throw NumericalError("TransmitCovariance: Q not Hermitian");
    }
    const double tr = q.trace().real();
    if (tr > budget * (1.0 + 1e-10)) {
        std::ostringstream os;
        os << "TransmitCovariance: tr Q = " << tr << " exceeds budget " << budget;
        throw NumericalError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig((q + q.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = std::max(0.0, eig.eigenvalues().maxCoeff());
    if (lmin < -1e-10 * std::max(lmax, 1e-300)) {
        throw NumericalError("TransmitCovariance: Q indefinite");
    }
}

PhaseVector::PhaseVector(RVec angles) : theta_(std::move(angles)) {
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
        double a = std::fmod(theta_[i], 2.0 * M_PI);
        if (a < 0.0) a += 2.0 * M_PI;
        theta_[i] = a;
    }
}

PhaseVector PhaseVector::flat(int l) { return PhaseVector(RVec::Zero(l)); }

PhaseVector PhaseVector::random(int l, RngStream& stream) {
    RVec a(l);
    for (int i = 0; i < l; ++i) a[i] = stream.uniform_angle();
    return PhaseVector(std::move(a));
}

CVec PhaseVector::phasors() const {
    CVec v(theta_.size());
    for (Eigen::Index i = 0; i < theta_.size(); ++i) v[i] = std::polar(1.0, theta_[i]);
    return v;
}

CMat PhaseVector::matrix() const { return CMat(phasors().asDiagonal()); }

SystemStatistics apply_replacements(const SystemStatistics& stats, const TransmitCovariance& q,
                                    const PhaseVector& theta) {
    stats.check_shapes();
    if (q.q.rows() != stats.dims.n) throw NumericalError("apply_replacements: Q dimension mismatch");
    if (theta.size() != stats.dims.l) {
        throw NumericalError("apply_replacements: phase vector dimension mismatch");
    }
    const CMat qh = hermitian_sqrt(q.q);
    const CMat th = theta.matrix();
    SystemStatistics eff = stats;
    eff.link0.t = qh * stats.link0.t * qh;
    eff.link0.hbar = stats.link0.hbar * qh;
    eff.link1.t = qh * stats.link1.t * qh;
    eff.link1.hbar = stats.link1.hbar * qh;
    eff.link2.t = th.adjoint() * stats.link2.t * th;
    eff.link2.hbar = stats.link2.hbar * th;
    return eff;
}

namespace {

CMat eye(int n) { return CMat::Identity(n, n); }

}  // namespace

namespace detail {

FContext make_f_context(const SystemStatistics& stats, const PhaseVector& theta,
                        const FixedPointSolution& scalars) {
    stats.check_shapes();
    FContext ctx;
    ctx.c = 1.0 / stats.sigma2;
    ctx.sc = stats;
    ctx.sc.sigma2 = 1.0;
    ctx.sc.link0.t *= ctx.c;
    ctx.sc.link0.hbar *= std::sqrt(ctx.c);
    ctx.sc.link1.t *= ctx.c;
    ctx.sc.link1.hbar *= std::sqrt(ctx.c);
    const auto s = scalars.scalars();
    ctx.x = {s[0] * ctx.c, s[1] * ctx.c, s[2] * ctx.c, s[3] / ctx.c, s[4] / ctx.c, s[5] / ctx.c};
    ctx.th = theta.matrix();

    const int l = stats.dims.l, k = stats.dims.k;
    const double e0 = ctx.x[0], e1 = ctx.x[1], e2 = ctx.x[2];
    const double te0 = ctx.x[3], te1 = ctx.x[4], te2 = ctx.x[5];
    const CMat& hb0 = ctx.sc.link0.hbar;
    const CMat& hb1 = ctx.sc.link1.hbar;
    const CMat& hb2 = ctx.sc.link2.hbar;
    const CMat& r0 = ctx.sc.link0.r;
    const CMat& r1 = ctx.sc.link1.r;
    const CMat& r2 = ctx.sc.link2.r;

    ctx.phi2 = ctx.sc.sigma2 * eye(k) + e2 * r2;
    ctx.inv_phi2 = solve_general(ctx.phi2, eye(k), "Phi2");
    ctx.m = hb2.adjoint() * ctx.inv_phi2 * hb2 + te2 * ctx.sc.link2.t;
    ctx.f1 = eye(l) + e1 * ctx.th.adjoint() * ctx.m * ctx.th * r1;
    ctx.inv_f1 = solve_general(ctx.f1, eye(l), "F1");
    ctx.f2 = ctx.inv_phi2 *
             (eye(k) - e1 * hb2 * ctx.th * r1 * ctx.inv_f1 * ctx.th.adjoint() * hb2.adjoint() *
                           ctx.inv_phi2);

    ctx.u1 = hb1.adjoint() * ctx.inv_f1;  // N x L
    ctx.v1 = solve_adjoint(ctx.f1, hb1, "F1");
    ctx.left = hb0.adjoint() * ctx.f2 +
               ctx.u1 * ctx.th.adjoint() * hb2.adjoint() * ctx.inv_phi2;  // N x K
    ctx.right = ctx.f2 * hb0 + ctx.inv_phi2 * hb2 * ctx.th * ctx.v1;     // K x N
    const CMat mid =
        e0 * r0 * solve_general(CMat(eye(k) + e0 * ctx.f2 * r0), CMat(eye(k)), "I + e0 F2 R0");

    CMat f = ctx.u1 * ctx.th.adjoint() * ctx.m * ctx.th * hb1 + hb0.adjoint() * ctx.f2 * hb0 +
             ctx.u1 * ctx.th.adjoint() * hb2.adjoint() * ctx.inv_phi2 * hb0 +
             hb0.adjoint() * ctx.inv_phi2 * hb2 * ctx.th * ctx.v1 + te0 * ctx.sc.link0.t +
             te1 * ctx.sc.link1.t - ctx.left * mid * ctx.right;

    const double scale = std::max(1e-300, f.cwiseAbs().maxCoeff());
    ctx.herm_defect_rel = hermiticity_defect(f) / scale;
    if (ctx.herm_defect_rel > 1e-9) {
        std::ostringstream os;
        os << "assemble_F: F asymmetric beyond tolerance (relative defect " << ctx.herm_defect_rel
           << ")";
        throw NumericalError(os.str());
    }
    ctx.f = (f + f.adjoint()) / 2.0;
    return ctx;
}

}  // namespace detail

FAssembly assemble_F(const SystemStatistics& stats, const PhaseVector& theta,
                     const FixedPointSolution& scalars) {
    const detail::FContext ctx = detail::make_f_context(stats, theta, scalars);
    FAssembly out;
    out.f = ctx.f;
    out.f1 = ctx.f1;
    // Map the noise-rescaled factors back to original units.
    out.f2 = ctx.c * ctx.f2;
    out.phi2 = ctx.phi2 / ctx.c;
    return out;
}

RateResult deterministic_rate_frozen(const SystemStatistics& stats, const TransmitCovariance& q,
                                     const PhaseVector& theta, const FixedPointSolution& scalars) {
    const detail::FContext ctx = detail::make_f_context(stats, theta, scalars);
    const int l = stats.dims.l, k = stats.dims.k;
    const int n = stats.dims.n;
    const double e0 = ctx.x[0], e1 = ctx.x[1], e2 = ctx.x[2];
    const double te0 = ctx.x[3], te1 = ctx.x[4], te2 = ctx.x[5];

    RateResult rr;
    rr.provenance = RateResult::Provenance::kAnalytic;
    rr.terms_nats.resize(7);
    rr.terms_nats[0] = logdet_hpd(eye(k) + (e2 / ctx.sc.sigma2) * ctx.sc.link2.r);
    rr.terms_nats[1] = logdet_real(
        eye(l) + e1 * ctx.th.adjoint() * ctx.m * ctx.th * ctx.sc.link1.r, "I + e1 Theta^H M Theta R1");
    rr.terms_nats[2] = logdet_real(eye(k) + e0 * ctx.f2 * ctx.sc.link0.r, "I + e0 F2 R0");
    rr.terms_nats[3] = logdet_real(eye(n) + ctx.f * q.q, "I + F Q");
    rr.terms_nats[4] = -double(n) * e0 * te0;
    rr.terms_nats[5] = -double(n) * e1 * te1;
    rr.terms_nats[6] = -double(l) * e2 * te2;
    rr.nats = 0.0;
    for (double t : rr.terms_nats) rr.nats += t;
    return rr;
}

RateResult deterministic_rate(const SystemStatistics& stats, const TransmitCovariance& q,
                              const PhaseVector& theta, const FixedPointOptions& opts,
                              FixedPointSolution* solution_out,
                              const FixedPointSolution* warm_start) {
    const SystemStatistics eff = apply_replacements(stats, q, theta);
    const FixedPointSolution sol = solve_fixed_point(eff, opts, warm_start);
    if (solution_out) *solution_out = sol;
    if (!sol.converged) {
        std::ostringstream os;
        os << "deterministic_rate: fixed point not converged (residual " << sol.residual << ")";
        throw NumericalError(os.str());
    }
    return deterministic_rate_frozen(stats, q, theta, sol);
}

namespace {

double mc_trial_nats(const ChannelSampler& sampler, const CMat& qh, const CMat& th, double sigma2,
                     std::uint64_t seed, long trial) {
    RngStream stream(seed, StreamTag::kMonteCarlo, static_cast<std::uint64_t>(trial));
    CMat h0, h1, h2;
    sampler.sample(stream, h0, h1, h2);
    const CMat g = (h0 + h2 * th * h1) * qh;
    const int k = static_cast<int>(g.rows());
    return logdet_hpd(CMat::Identity(k, k) + (g * g.adjoint()) / sigma2);
}

RateResult mc_reduce(const std::vector<double>& vals) {
    KahanSum sum;
    for (double v : vals) sum.add(v);
    const double mean = sum.value() / double(vals.size());
    KahanSum var;
    for (double v : vals) var.add((v - mean) * (v - mean));
    RateResult rr;
    rr.provenance = RateResult::Provenance::kMonteCarlo;
    rr.nats = mean;
    rr.trials = static_cast<long>(vals.size());
    rr.stderr_nats =
        vals.size() > 1 ? std::sqrt(var.value() / (double(vals.size()) * (vals.size() - 1))) : 0.0;
    return rr;
}

}  // namespace

RateResult monte_carlo_rate(const SystemStatistics& stats, const TransmitCovariance& q,
                            const PhaseVector& theta, long trials, std::uint64_t seed,
                            int workers) {
    if (trials < 1) throw NumericalError("monte_carlo_rate: trials must be >= 1");
    const ChannelSampler sampler(stats);
    const CMat qh = hermitian_sqrt(q.q);
    const CMat th = theta.matrix();
    std::vector<double> vals(static_cast<size_t>(trials));
    parallel_for(trials, workers, [&](std::ptrdiff_t i) {
        vals[static_cast<size_t>(i)] = mc_trial_nats(sampler, qh, th, stats.sigma2, seed, i);
    });
    return mc_reduce(vals);
}

RateResult monte_carlo_rate_serial(const SystemStatistics& stats, const TransmitCovariance& q,
                                   const PhaseVector& theta, long trials, std::uint64_t seed) {
    if (trials < 1) throw NumericalError("monte_carlo_rate: trials must be >= 1");
    const ChannelSampler sampler(stats);
    const CMat qh = hermitian_sqrt(q.q);
    const CMat th = theta.matrix();
    std::vector<double> vals(static_cast<size_t>(trials));
    for (long i = 0; i < trials; ++i) {
        vals[static_cast<size_t>(i)] = mc_trial_nats(sampler, qh, th, stats.sigma2, seed, i);
    }
    return mc_reduce(vals);
}

}  // namespace rismimo
