// SPDX-License-Identifier: Apache-2.0
//
// Statistical channel description for the three links of a RIS-assisted
// downlink (0: BS->user, 1: BS->RIS, 2: RIS->user) and the i.i.d. sampler
// feeding the Monte-Carlo rate estimator.
//
// Each link follows the Kronecker model H = R^(1/2) X T^(1/2) + Hbar with a
// Rician line-of-sight part Hbar. Large-scale gains and Rician scaling are
// absorbed into T and Hbar; the trace normalizations are
//   link 0: tr R = K, tr T = N^2 G0/(k0+1), tr Hbar Hbar^H = k0/(k0+1) N K G0
//   link 1: tr R = L, tr T = N^2 G1/(k1+1), tr Hbar Hbar^H = k1/(k1+1) N L G1
//   link 2: tr R = K, tr T = L^2 G2/(k2+1), tr Hbar Hbar^H = k2/(k2+1) K L G2
// matching the 1/N, 1/N, 1/L variances of the scattered parts.

#ifndef RISMIMO_CHANNEL_MODEL_HPP
#define RISMIMO_CHANNEL_MODEL_HPP

#include <array>
#include <cstdint>

#include "rismimo/rng.hpp"
#include "rismimo/types.hpp"

namespace rismimo {

struct SystemDims {
    int n = 8;  ///< BS antennas
    int l = 8;  ///< RIS elements
    int k = 8;  ///< user antennas
};

/// Uniform linear array seen under a Gaussian power-angle profile.
struct ArrayGeometry {
    double ds = 1.0;        ///< antenna spacing in wavelengths
    double eta_deg = 0.0;   ///< mean angle, degrees in [-180, 180]
    double delta_deg = 5.0; ///< RMS angle spread, degrees, > 0
};

struct LinkStatistics {
    CMat r;        ///< receive correlation
    CMat t;        ///< transmit correlation (absorbs gain and Rician scaling)
    CMat hbar;     ///< LoS component (absorbs gain and Rician scaling)
    double kappa = 0.0;  ///< Rician factor
    double gamma = 1.0;  ///< large-scale gain, linear
};

struct SystemStatistics {
    SystemDims dims;
    LinkStatistics link0, link1, link2;
    double sigma2 = 1.0;        ///< noise variance, linear power
    double power_budget = 1.0;  ///< total transmit power bound tr Q <= budget

    /// Checks the matrix shapes against dims; throws NumericalError on mismatch.
    void check_shapes() const;
};

struct Position {
    double x = 0.0, y = 0.0;
};

struct ScenarioConfig {
    SystemDims dims;
    Position bs{0.0, 10.0};
    Position ris{40.0, 10.0};
    Position user{80.0, 10.0};
    double p_dbm = 10.0;
    double noise_dbm = -94.0;
    double bandwidth_hz = 10e6;  ///< carried for reporting; rates are per channel use
    double gt_dbi = 5.0;
    double gr_dbi = 5.0;
    std::array<double, 3> kappa{1.0, 1.0, 1.0};
    // Per-link array geometries. rx is the receive end (user / RIS / user),
    // tx the transmit end (BS / BS / RIS).
    std::array<ArrayGeometry, 3> rx{ArrayGeometry{1.0, 0.0, 30.0}, ArrayGeometry{1.0, 0.0, 20.0},
                                    ArrayGeometry{1.0, 0.0, 5.0}};
    std::array<ArrayGeometry, 3> tx{ArrayGeometry{1.0, 10.0, 5.0}, ArrayGeometry{1.0, 0.0, 5.0},
                                    ArrayGeometry{1.0, 0.0, 30.0}};
    long mc_trials = 2000;
    std::uint64_t seed = 1;
    double budget_override = -1.0;  ///< total power budget; < 0 means N * P
    double debug_trace_scale = 1.0; ///< validation-harness hook; 1.0 in normal use
};

/// Number of quadrature nodes for the correlation integral.
inline constexpr int kCorrelationGridPoints = 4096;

/// x dBm -> watts.
double dbm_to_watt(double dbm);

/// Path-loss gain, linear: 10^((Gt + Gr - 37.5 - 22 log10(d/1m)) / 10).
/// Undefined below the 1 m reference distance.
double path_loss_linear(double distance_m, double gt_dbi, double gr_dbi);

/// size x size correlation matrix with entry (m, n) equal to the Gaussian
/// power-angle integral over [-180, 180] degrees, evaluated by composite
/// trapezoid quadrature on a uniform grid (`grid_points` nodes). The
/// quadrature is normalized by the captured Gaussian mass (the true window
/// integrates to one for any spread up to ~30 degrees); spreads far below
/// the grid resolution fall back to the vanishing-spread steering limit.
/// The result is Hermitian Toeplitz and clamped to be PSD.
CMat correlation_from_angles(int size, const ArrayGeometry& geom,
                             int grid_points = kCorrelationGridPoints);

/// Scaled all-one matrix c * 1 with c chosen so tr(H H^H) == target_trace.
/// target_trace == 0 yields the zero matrix.
CMat los_allones(int rows, int cols, double target_trace);

/// Build the full statistical description from scenario geometry: distances,
/// path-loss gains, correlation shapes rescaled to the exact trace targets,
/// all-one LoS directions, dBm -> linear conversions.
SystemStatistics build_statistics(const ScenarioConfig& cfg);

/// Precomputed square-root factors for repeated channel draws.
class ChannelSampler {
public:
    explicit ChannelSampler(const SystemStatistics& stats);

    /// Draw (H0, H1, H2) from the given stream; deterministic in the stream state.
    void sample(RngStream& stream, CMat& h0, CMat& h1, CMat& h2) const;

    const SystemStatistics& stats() const { return *stats_; }

private:
    const SystemStatistics* stats_;
    CMat r0h_, t0h_, r1h_, t1h_, r2h_, t2h_;
};

/// One-shot sampling helper (oracle/tests); trial streams come from
/// (seed, StreamTag::kChannelSample, trial).
void sample_channels(const SystemStatistics& stats, RngStream& stream, CMat& h0, CMat& h1,
                     CMat& h2);

}  // namespace rismimo

#endif
