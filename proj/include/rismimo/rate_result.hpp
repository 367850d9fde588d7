// SPDX-License-Identifier: Apache-2.0
#ifndef RISMIMO_RATE_RESULT_HPP
#define RISMIMO_RATE_RESULT_HPP

#include <cmath>
#include <vector>

namespace rismimo {

/// Achievable-rate value, in bits per channel use (nats kept alongside).
/// Analytic results carry a per-term breakdown of the closed form; Monte-Carlo
/// results carry the sample standard error and trial count instead.
struct RateResult {
    enum class Provenance { kAnalytic, kMonteCarlo };

    double nats = 0.0;
    Provenance provenance = Provenance::kAnalytic;
    std::vector<double> terms_nats;  ///< analytic only
    double stderr_nats = 0.0;        ///< Monte Carlo only
    long trials = 0;                 ///< Monte Carlo only

    double bits() const { return nats / M_LN2; }
    double stderr_bits() const { return stderr_nats / M_LN2; }
};

}  // namespace rismimo

#endif
