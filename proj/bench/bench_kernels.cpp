// SPDX-License-Identifier: Apache-2.0
//
// Serial-vs-OpenMP throughput comparison for the two data-parallel kernels:
// the Monte-Carlo rate estimator and the per-element phase gradient.
// Also verifies that the parallel paths reproduce the serial results.

#include <chrono>
#include <cstdio>

#include "rismimo/experiment.hpp"
#include "rismimo/parallel.hpp"

using namespace rismimo;

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    const int workers = argc > 1 ? std::atoi(argv[1]) : hardware_workers();
    Scenario sc = load_scenario_text(default_scenario_text());
    sc.channel.dims.l = 64;
    const SystemStatistics stats = build_statistics(sc.channel);

    RngStream stream(7, StreamTag::kPhaseInit, 0);
    const PhaseVector theta = PhaseVector::random(stats.dims.l, stream);
    const TransmitCovariance q = TransmitCovariance::uniform(stats.dims.n, stats.power_budget);

    std::printf("workers: %d (hardware %d)\n", workers, hardware_workers());

    {
        const long trials = 4000;
        auto t0 = std::chrono::steady_clock::now();
        const RateResult serial = monte_carlo_rate_serial(stats, q, theta, trials, 7);
        const double t_serial = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        const RateResult par = monte_carlo_rate(stats, q, theta, trials, 7, workers);
        const double t_par = ms_since(t0);
        std::printf("monte_carlo_rate  %ld trials  serial %8.1f ms  parallel %8.1f ms  speedup %.2fx"
                    "  |mean diff| %.3e bits\n",
                    trials, t_serial, t_par, t_serial / t_par,
                    std::abs(serial.bits() - par.bits()));
    }

    {
        FixedPointSolution sol;
        deterministic_rate(stats, q, theta, {}, &sol);
        const int reps = 20;
        auto t0 = std::chrono::steady_clock::now();
        PhaseGradient ref = phase_gradient_reference(stats, q, theta, sol);
        for (int i = 1; i < reps; ++i) ref = phase_gradient_reference(stats, q, theta, sol);
        const double t_serial = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        PhaseGradient fast = phase_gradient(stats, q, theta, sol, workers);
        for (int i = 1; i < reps; ++i) fast = phase_gradient(stats, q, theta, sol, workers);
        const double t_par = ms_since(t0);
        const double diff = (ref.p - fast.p).cwiseAbs().maxCoeff() /
                            std::max(1e-300, ref.p.cwiseAbs().maxCoeff());
        std::printf("phase_gradient    L=%d x%d     dense  %8.1f ms  structured %5.1f ms  "
                    "speedup %.2fx  rel diff %.3e\n",
                    stats.dims.l, reps, t_serial, t_par, t_serial / t_par, diff);
    }
    return 0;
}
