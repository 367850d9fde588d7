// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "rismimo/alternating_opt.hpp"
#include "rismimo/config.hpp"
#include "rismimo/experiment.hpp"
#include "support.hpp"

using namespace rismimo;

TEST_CASE("reflector-free instance collapses to single-hop waterfilling") {
    Scenario sc = load_scenario_text(default_scenario_text());
    sc.channel.dims = {4, 4, 4};
    const SystemStatistics bare = zero_reflector_links(build_statistics(sc.channel));

    JointOptOptions jo;
    jo.restarts = 1;
    const JointResult jr = optimize_joint(bare, 5, jo);
    CHECK(jr.converged);
    CHECK(jr.outer_iterations <= 2);
    // Everything after the first outer round is settled to the inner
    // stopping threshold.
    CHECK(std::abs(jr.rate_trace_nats.back() - jr.rate_trace_nats[1]) < jo.epsilon);

    const CovarianceOptResult cv = optimize_covariance(
        bare, PhaseVector::flat(4), TransmitCovariance::uniform(4, bare.power_budget));
    CHECK(std::abs(jr.final_rate_nats - cv.rate_trace_nats.back()) < 2.0 * jo.epsilon);
}

TEST_CASE("joint optimization on the reference scenario") {
    const Scenario sc = load_scenario_text(default_scenario_text());
    const SystemStatistics stats = build_statistics(sc.channel);
    JointOptOptions jo;
    jo.restarts = 3;
    const JointResult jr = optimize_joint(stats, 1, jo);
    CHECK(jr.converged);
    CHECK(jr.outer_iterations <= 50);
    for (size_t i = 1; i < jr.rate_trace_nats.size(); ++i) {
        CHECK(jr.rate_trace_nats[i] >= jr.rate_trace_nats[i - 1] - 1e-8);
    }

    // Baselines: uniform Q with random phases, waterfilled Q with random phases.
    RngStream ps(1, StreamTag::kPhaseInit, 0);
    const PhaseVector rand_theta = PhaseVector::random(stats.dims.l, ps);
    const TransmitCovariance uniform = TransmitCovariance::uniform(stats.dims.n, stats.power_budget);
    const double uniform_rate = deterministic_rate(stats, uniform, rand_theta).nats;
    const double optq_rate =
        optimize_covariance(stats, rand_theta, uniform).rate_trace_nats.back();
    CHECK(jr.final_rate_nats > uniform_rate);
    CHECK(jr.final_rate_nats >= optq_rate - 1e-9);

    // Final point is a fixed point of both inner solvers.
    FixedPointSolution sol;
    deterministic_rate(stats, jr.q, jr.theta, {}, &sol);
    const PhaseOptResult rephase = optimize_phases(stats, jr.q, jr.theta, {}, &sol);
    CHECK(std::abs(rephase.rate_trace_nats.back() - jr.final_rate_nats) < 2e-5);
    const CovarianceOptResult recov = optimize_covariance(stats, jr.theta, jr.q, {}, &sol);
    CHECK(std::abs(recov.rate_trace_nats.back() - jr.final_rate_nats) < 2e-5);
}

TEST_CASE("joint optimization is deterministic in the seed") {
    Scenario sc = load_scenario_text(default_scenario_text());
    sc.channel.dims = {4, 4, 4};
    const SystemStatistics stats = build_statistics(sc.channel);
    JointOptOptions jo;
    jo.restarts = 2;
    const JointResult a = optimize_joint(stats, 7, jo);
    const JointResult b = optimize_joint(stats, 7, jo);
    REQUIRE(a.rate_trace_nats.size() == b.rate_trace_nats.size());
    for (size_t i = 0; i < a.rate_trace_nats.size(); ++i) {
        CHECK(a.rate_trace_nats[i] == b.rate_trace_nats[i]);
    }
    CHECK((a.theta.angles() - b.theta.angles()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(testsupport::max_abs_diff(a.q.q, b.q.q) == 0.0);
}
