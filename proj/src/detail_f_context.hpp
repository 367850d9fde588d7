// SPDX-License-Identifier: Apache-2.0
//
// Internal: shared assembly for the closed-form rate, the waterfilling F
// matrix, and the phase gradient. Works on the noise-rescaled statistics
// (sigma2 == 1); F, F1 and every rate term are invariant under that
// rescaling, F2 and Phi2 scale by 1/c and c respectively.

#ifndef RISMIMO_DETAIL_F_CONTEXT_HPP
#define RISMIMO_DETAIL_F_CONTEXT_HPP

#include <array>

#include "rismimo/large_system.hpp"
#include "rismimo/rate_eval.hpp"

namespace rismimo::detail {

struct FContext {
    SystemStatistics sc;        // rescaled stats
    double c = 1.0;             // 1/sigma2
    std::array<double, 6> x{};  // rescaled scalars
    CMat th;                    // Theta
    CMat phi2, inv_phi2;        // rescaled
    CMat m;                     // Hbar2^H Phi2^-1 Hbar2 + te2 T2
    CMat f1, inv_f1;
    CMat f2;                    // rescaled (original = c * f2)
    CMat f;                     // symmetrized; scale-invariant
    CMat left;                  // Hbar0^H F2 + Hbar1^H F1^-1 Theta^H Hbar2^H Phi2^-1, N x K
    CMat right;                 // F2 Hbar0 + Phi2^-1 Hbar2 Theta F1^-H Hbar1, K x N
    CMat u1;                    // Hbar1^H F1^-1, N x L
    CMat v1;                    // F1^-H Hbar1, L x N
    double herm_defect_rel = 0.0;
};

FContext make_f_context(const SystemStatistics& stats, const PhaseVector& theta,
                        const FixedPointSolution& scalars);

}  // namespace rismimo::detail

#endif
