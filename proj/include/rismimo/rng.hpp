// SPDX-License-Identifier: Apache-2.0
//
// Seeded random streams. Independent trials draw from sub-streams derived
// from (seed, stream tag, index) so that concurrent execution order never
// changes the numbers a given trial sees.

#ifndef RISMIMO_RNG_HPP
#define RISMIMO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "rismimo/types.hpp"

namespace rismimo {

/// splitmix64 finalizer; good avalanche, used only for stream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1e3563a9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Distinct stream families hanging off one experiment seed.
enum class StreamTag : std::uint64_t {
    kMonteCarlo = 1,
    kPhaseInit = 2,
    kChannelSample = 3,
    kTest = 99,
};

class RngStream {
public:
    RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t index)
        : gen_(mix64(mix64(seed ^ 0x6a09e667f3bcc908ULL) ^ mix64(static_cast<std::uint64_t>(tag)) ^
                     mix64(index + 0x9e3779b97f4a7c15ULL))) {}

    /// Uniform in [0, 1).
    double uniform() {
        return std::generate_canonical<double, 53>(gen_);
    }

    /// Uniform in [0, 2*pi).
    double uniform_angle() { return uniform() * 2.0 * M_PI; }

    /// Standard real normal via Box-Muller (pinned algorithm; the standard
    /// library leaves std::normal_distribution implementation-defined).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Zero-mean unit-variance complex normal: two real normals scaled 1/sqrt(2).
    Complex cnormal() {
        const double re = normal();
        const double im = normal();
        return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace rismimo

#endif
