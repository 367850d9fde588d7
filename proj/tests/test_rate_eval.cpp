// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "rismimo/config.hpp"
#include "rismimo/experiment.hpp"
#include "rismimo/matrix_kernel.hpp"
#include "rismimo/rate_eval.hpp"
#include "support.hpp"

using namespace rismimo;
using testsupport::max_abs_diff;
using testsupport::random_stats;

namespace {

TransmitCovariance random_q(int n, double budget, RngStream& s) {
    CMat q = testsupport::random_psd(n, s, budget);
    TransmitCovariance tc;
    tc.q = q;
    tc.budget = budget;
    return tc;
}

}  // namespace

TEST_CASE("identity replacements leave the statistics unchanged") {
    const SystemStatistics st = random_stats(3, 4, 2, 7, 60);
    TransmitCovariance q;
    q.q = CMat::Identity(3, 3);
    q.budget = 3.0;
    const SystemStatistics eff = apply_replacements(st, q, PhaseVector::flat(4));
    CHECK(max_abs_diff(eff.link0.t, st.link0.t) < 1e-12);
    CHECK(max_abs_diff(eff.link1.hbar, st.link1.hbar) < 1e-12);
    CHECK(max_abs_diff(eff.link2.t, st.link2.t) < 1e-12);
    CHECK(max_abs_diff(eff.link2.hbar, st.link2.hbar) < 1e-12);
}

TEST_CASE("zero covariance wipes the transmit-side statistics") {
    const SystemStatistics st = random_stats(3, 4, 2, 7, 61);
    TransmitCovariance q;
    q.q = CMat::Zero(3, 3);
    q.budget = 3.0;
    RngStream s(1, StreamTag::kTest, 0);
    const SystemStatistics eff = apply_replacements(st, q, PhaseVector::random(4, s));
    CHECK(eff.link0.t.norm() == 0.0);
    CHECK(eff.link1.t.norm() == 0.0);
    CHECK(eff.link0.hbar.norm() == 0.0);
    CHECK(eff.link1.hbar.norm() == 0.0);
}

TEST_CASE("phase replacement preserves the reflector-side trace") {
    const SystemStatistics st = random_stats(3, 3, 3, 7, 62);
    RngStream s(2, StreamTag::kTest, 0);
    const SystemStatistics eff =
        apply_replacements(st, random_q(3, 3.0, s), PhaseVector::random(3, s));
    CHECK(std::abs(eff.link2.t.trace().real() - st.link2.t.trace().real()) < 1e-12);
}

TEST_CASE("dual-path identity on random instances") {
    for (int trial = 0; trial < 6; ++trial) {
        const SystemStatistics st = random_stats(3, 4, 3, trial % 8u, 63 + trial);
        RngStream s(3 + trial, StreamTag::kTest, 0);
        const TransmitCovariance q = random_q(3, st.power_budget, s);
        const PhaseVector theta = PhaseVector::random(4, s);
        const double via_f = deterministic_rate(st, q, theta).nats;
        const double via_general = asymptotic_rate(apply_replacements(st, q, theta)).nats;
        CHECK(std::abs(via_f - via_general) < 1e-9);
    }
}

TEST_CASE("dual-path identity on the reference scenario") {
    const Scenario sc = load_scenario_text(default_scenario_text());
    const SystemStatistics st = build_statistics(sc.channel);
    RngStream s(4, StreamTag::kTest, 0);
    const TransmitCovariance q = random_q(st.dims.n, st.power_budget, s);
    const PhaseVector theta = PhaseVector::random(st.dims.l, s);
    const double via_f = deterministic_rate(st, q, theta).nats;
    const double via_general = asymptotic_rate(apply_replacements(st, q, theta)).nats;
    CHECK(std::abs(via_f - via_general) < 1e-9);
}

TEST_CASE("zero covariance gives zero rate") {
    const SystemStatistics st = random_stats(3, 3, 3, 7, 70);
    TransmitCovariance q;
    q.q = CMat::Zero(3, 3);
    q.budget = 3.0;
    RngStream s(5, StreamTag::kTest, 0);
    const PhaseVector theta = PhaseVector::random(3, s);
    CHECK(std::abs(deterministic_rate(st, q, theta).nats) < 1e-12);
    const RateResult mc = monte_carlo_rate(st, q, theta, 50, 9);
    CHECK(mc.nats == 0.0);
    CHECK(mc.stderr_nats == 0.0);
}

TEST_CASE("F assembly reductions") {
    // All LoS parts zero: only the additive terms survive.
    {
        const SystemStatistics st = random_stats(3, 4, 3, 0, 71);
        RngStream s(6, StreamTag::kTest, 0);
        const TransmitCovariance q = random_q(3, st.power_budget, s);
        const PhaseVector theta = PhaseVector::random(4, s);
        FixedPointSolution sol;
        deterministic_rate(st, q, theta, {}, &sol);
        const FAssembly fa = assemble_F(st, theta, sol);
        const CMat expect = sol.te0 * st.link0.t + sol.te1 * st.link1.t;
        CHECK(max_abs_diff(fa.f, expect) < 1e-10 * std::max(1.0, expect.norm()));
    }
    // Single-hop instance.
    {
        SystemStatistics st = random_stats(4, 4, 4, 1, 72);
        st.link1.r.setZero();
        st.link1.t.setZero();
        st.link1.hbar.setZero();
        st.link2.r.setZero();
        st.link2.t.setZero();
        st.link2.hbar.setZero();
        RngStream s(7, StreamTag::kTest, 0);
        const TransmitCovariance q = random_q(4, st.power_budget, s);
        const PhaseVector theta = PhaseVector::flat(4);
        FixedPointSolution sol;
        deterministic_rate(st, q, theta, {}, &sol);
        const FAssembly fa = assemble_F(st, theta, sol);
        const int k = st.dims.k;
        const CMat expect =
            sol.te0 * st.link0.t +
            st.link0.hbar.adjoint() *
                solve_general(CMat(st.sigma2 * CMat::Identity(k, k) + sol.e0 * st.link0.r),
                              st.link0.hbar) ;
        CHECK(max_abs_diff(fa.f, expect) < 1e-10 * std::max(1.0, expect.norm()));
    }
    // No direct link.
    {
        SystemStatistics st = random_stats(4, 3, 4, 6, 73);
        st.link0.r.setZero();
        st.link0.t.setZero();
        st.link0.hbar.setZero();
        RngStream s(8, StreamTag::kTest, 0);
        const TransmitCovariance q = random_q(4, st.power_budget, s);
        const PhaseVector theta = PhaseVector::random(3, s);
        FixedPointSolution sol;
        deterministic_rate(st, q, theta, {}, &sol);
        const FAssembly fa = assemble_F(st, theta, sol);
        const CMat th = theta.matrix();
        const int k = st.dims.k, l = st.dims.l;
        const CMat phi2 = st.sigma2 * CMat::Identity(k, k) + sol.e2 * st.link2.r;
        const CMat m = st.link2.hbar.adjoint() * phi2.inverse() * st.link2.hbar +
                       sol.te2 * st.link2.t;
        const CMat f1 = CMat::Identity(l, l) + sol.e1 * th.adjoint() * m * th * st.link1.r;
        const CMat expect = st.link1.hbar.adjoint() * f1.inverse() * th.adjoint() * m * th *
                                st.link1.hbar +
                            sol.te1 * st.link1.t;
        CHECK(max_abs_diff(fa.f, expect) < 1e-9 * std::max(1.0, expect.norm()));
        CHECK(max_abs_diff(fa.f1, f1) < 1e-10 * std::max(1.0, f1.norm()));
    }
}

TEST_CASE("closed form matches Monte Carlo on the reference scenario") {
    const Scenario sc = load_scenario_text(default_scenario_text());
    const SystemStatistics st = build_statistics(sc.channel);
    const TransmitCovariance q = TransmitCovariance::uniform(st.dims.n, st.power_budget);
    RngStream s(9, StreamTag::kTest, 0);
    const PhaseVector theta = PhaseVector::random(st.dims.l, s);
    const RateResult analytic = deterministic_rate(st, q, theta);
    const RateResult mc = monte_carlo_rate(st, q, theta, 2000, 11, 1);
    CHECK(std::abs(analytic.nats - mc.nats) < 0.02 * mc.nats);
    CHECK(std::abs(analytic.nats - mc.nats) < 3.5 * mc.stderr_nats + 0.02 * mc.nats);
}

TEST_CASE("near-deterministic channels match the closed-form log-det") {
    Scenario sc = load_scenario_text(default_scenario_text());
    sc.channel.kappa = {1e6, 1e6, 1e6};
    sc.channel.dims = {4, 4, 4};
    // Moderate SNR; at very high SNR the -60 dB scattered tail still shows
    // up through the spatial modes the rank-one LoS leaves empty.
    sc.channel.noise_dbm = -55.0;
    const SystemStatistics st = build_statistics(sc.channel);
    const TransmitCovariance q = TransmitCovariance::uniform(4, st.power_budget);
    RngStream s(10, StreamTag::kTest, 0);
    const PhaseVector theta = PhaseVector::random(4, s);
    const CMat heff = st.link0.hbar + st.link2.hbar * theta.matrix() * st.link1.hbar;
    const double expect = logdet_hpd(
        CMat(CMat::Identity(4, 4) + heff * q.q * heff.adjoint() / st.sigma2));
    const RateResult mc = monte_carlo_rate(st, q, theta, 200, 12);
    CHECK(std::abs(mc.nats - expect) / expect < 1e-3);
}

TEST_CASE("Monte Carlo mean is invariant under worker partitioning") {
    const SystemStatistics st = random_stats(3, 3, 3, 7, 74);
    RngStream s(11, StreamTag::kTest, 0);
    const TransmitCovariance q = random_q(3, st.power_budget, s);
    const PhaseVector theta = PhaseVector::random(3, s);
    const RateResult serial = monte_carlo_rate_serial(st, q, theta, 257, 13);
    const RateResult w1 = monte_carlo_rate(st, q, theta, 257, 13, 1);
    const RateResult w4 = monte_carlo_rate(st, q, theta, 257, 13, 4);
    CHECK(serial.nats == w1.nats);
    CHECK(serial.nats == w4.nats);
    CHECK(serial.stderr_nats == w4.stderr_nats);
}

TEST_CASE("global phase invariance without a direct link") {
    SystemStatistics st = random_stats(3, 4, 3, 6, 75);
    st.link0.r.setZero();
    st.link0.t.setZero();
    st.link0.hbar.setZero();
    RngStream s(12, StreamTag::kTest, 0);
    const TransmitCovariance q = random_q(3, st.power_budget, s);
    const PhaseVector theta = PhaseVector::random(4, s);
    const double base = deterministic_rate(st, q, theta).nats;
    for (double c : {0.7, 2.1}) {
        RVec rotated = theta.angles().array() + c;
        const double r = deterministic_rate(st, q, PhaseVector(rotated)).nats;
        CHECK(std::abs(r - base) < 1e-9 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("rate is monotone under covariance shrinkage") {
    const SystemStatistics st = random_stats(4, 4, 4, 7, 76);
    RngStream s(13, StreamTag::kTest, 0);
    const TransmitCovariance q = random_q(4, st.power_budget, s);
    const PhaseVector theta = PhaseVector::random(4, s);
    const double full = deterministic_rate(st, q, theta).nats;
    double prev = 0.0;
    for (double c : {0.25, 0.5, 1.0}) {
        TransmitCovariance scaled;
        scaled.q = c * q.q;
        scaled.budget = q.budget;
        const double r = deterministic_rate(st, scaled, theta).nats;
        CHECK(r >= prev - 1e-10);
        CHECK(r <= full + 1e-10);
        prev = r;
    }
}

TEST_CASE("covariance validation catches violations") {
    TransmitCovariance q;
    q.q = 2.0 * CMat::Identity(3, 3);
    q.budget = 3.0;
    CHECK_THROWS_AS(q.validate(), NumericalError);  // trace 6 > 3
    q.q = CMat::Identity(3, 3);
    CHECK_NOTHROW(q.validate());
    q.q(0, 1) = 0.5;  // not Hermitian
    CHECK_THROWS_AS(q.validate(), NumericalError);
}
