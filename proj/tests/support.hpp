// SPDX-License-Identifier: Apache-2.0
//
// Shared test helpers: random O(1)-scale statistics, and an independent
// straight-line transcription of the fixed-point system used as the
// cross-check oracle for the production assembly. The oracle deliberately
// uses plain inverse() calls and the Schur-based matrix square root from
// Eigen's MatrixFunctions module, so it shares no code path with the library.

#ifndef RISMIMO_TESTS_SUPPORT_HPP
#define RISMIMO_TESTS_SUPPORT_HPP

#include <unsupported/Eigen/MatrixFunctions>

#include <array>

#include "rismimo/channel_model.hpp"
#include "rismimo/rng.hpp"

namespace rismimo::testsupport {

inline CMat random_complex(int rows, int cols, RngStream& s, double scale = 1.0) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = s.cnormal() * scale;
    }
    return m;
}

inline CMat random_psd(int n, RngStream& s, double trace_target) {
    const CMat b = random_complex(n, n, s);
    CMat q = b * b.adjoint();
    q *= trace_target / q.trace().real();
    return (q + q.adjoint()) / 2.0;
}

/// Random O(1)-scale statistics; `los_mask` bits 0..2 enable the LoS parts of
/// links 0..2.
inline SystemStatistics random_stats(int n, int l, int k, unsigned los_mask, std::uint64_t seed,
                                     double los_scale = 0.5) {
    RngStream s(seed, StreamTag::kTest, 0);
    SystemStatistics st;
    st.dims = {n, l, k};
    st.sigma2 = 0.5 + s.uniform();
    st.power_budget = double(n);
    st.link0.r = random_psd(k, s, double(k));
    st.link0.t = random_psd(n, s, 1.0 + s.uniform());
    st.link1.r = random_psd(l, s, double(l));
    st.link1.t = random_psd(n, s, 1.0 + s.uniform());
    st.link2.r = random_psd(k, s, double(k));
    st.link2.t = random_psd(l, s, 1.0 + s.uniform());
    st.link0.hbar = (los_mask & 1u) ? random_complex(k, n, s, los_scale) : CMat::Zero(k, n);
    st.link1.hbar = (los_mask & 2u) ? random_complex(l, n, s, los_scale) : CMat::Zero(l, n);
    st.link2.hbar = (los_mask & 4u) ? random_complex(k, l, s, los_scale) : CMat::Zero(k, l);
    return st;
}

struct NaiveAux {
    CMat phi0, phi1, phi2, psi0, psi1, psi2, xi0, omega;
    CMat pi01, pi11, pi12, pi21, pi31, pi32, pi33;
};

/// Straight transcription of the auxiliary-matrix system.
inline NaiveAux naive_aux(const std::array<double, 6>& x, const SystemStatistics& st) {
    const double e0 = x[0], e1 = x[1], e2 = x[2], te0 = x[3], te1 = x[4], te2 = x[5];
    const int n = st.dims.n, l = st.dims.l, k = st.dims.k;
    const CMat ik = CMat::Identity(k, k), il = CMat::Identity(l, l), in = CMat::Identity(n, n);
    const CMat &r0 = st.link0.r, &t0 = st.link0.t, &h0 = st.link0.hbar;
    const CMat &r1 = st.link1.r, &t1 = st.link1.t, &h1 = st.link1.hbar;
    const CMat &r2 = st.link2.r, &t2 = st.link2.t, &h2 = st.link2.hbar;

    NaiveAux a;
    a.phi2 = st.sigma2 * ik + e2 * r2;
    const CMat p2i = a.phi2.inverse();
    a.psi2 = h2.adjoint() * p2i * h2 + te2 * t2;
    a.phi1 = il + e1 * a.psi2 * r1;
    const CMat p1i = a.phi1.inverse();
    const CMat p1ih = a.phi1.adjoint().inverse();
    a.psi1 = p2i * (ik - e1 * h2 * r1 * p1i * h2.adjoint() * p2i);
    a.phi0 = ik + e0 * a.psi1 * r0;
    const CMat p0i = a.phi0.inverse();
    a.psi0 = a.psi1 * h0 + p2i * h2 * p1ih * h1;
    a.xi0 = h0 - e0 * r0 * p0i * a.psi0;
    a.omega = h1.adjoint() * p1i * a.psi2 * h1 + a.psi0.adjoint() * a.xi0 +
              h0.adjoint() * p2i * h2 * p1ih * h1 + te0 * t0 + te1 * t1;
    const CMat root = (in + a.omega).sqrt().inverse();  // Schur-based principal root
    const CMat s0 = CMat(e0 * r0 * p0i).sqrt();
    const CMat s1 = CMat(e1 * r1 * p1i).sqrt();
    a.pi01 = p0i * a.psi0 * root;
    a.pi11 = p1i * h2.adjoint() * p2i * s0;
    a.pi12 = p1i * (a.psi2 * h1 + h2.adjoint() * p2i * a.xi0) * root;
    a.pi21 = (p1ih * h1 - e1 * r1 * p1i * h2.adjoint() * p2i * a.xi0) * root;
    a.pi31 = p2i * h2 * s1;
    a.pi32 = a.psi1 * s0;
    a.pi33 = (p2i * h2 * p1ih * h1 + a.psi1 * a.xi0) * root;
    return a;
}

/// Straight transcription of the six right-hand sides.
inline std::array<double, 6> naive_rhs(const std::array<double, 6>& x,
                                       const SystemStatistics& st) {
    const NaiveAux a = naive_aux(x, st);
    const double e1 = x[1];
    const int n = st.dims.n, l = st.dims.l;
    const CMat in = CMat::Identity(n, n);
    const CMat ioi = (in + a.omega).inverse();
    std::array<double, 6> r;
    r[0] = (ioi * st.link0.t).trace().real() / n;
    r[1] = (ioi * st.link1.t).trace().real() / n;
    r[2] = ((e1 * st.link1.r * a.phi1.inverse() +
             e1 * e1 * st.link1.r * a.pi11 * a.pi11.adjoint() * st.link1.r +
             a.pi21 * a.pi21.adjoint()) *
            st.link2.t)
               .trace()
               .real() /
           l;
    r[3] = ((a.phi0.inverse() * a.psi1 - a.pi01 * a.pi01.adjoint()) * st.link0.r).trace().real() /
           n;
    r[4] = ((a.phi1.inverse() * a.psi2 - a.pi11 * a.pi11.adjoint() - a.pi12 * a.pi12.adjoint()) *
            st.link1.r)
               .trace()
               .real() /
           n;
    r[5] = ((a.phi2.inverse() - a.pi31 * a.pi31.adjoint() - a.pi32 * a.pi32.adjoint() -
             a.pi33 * a.pi33.adjoint()) *
            st.link2.r)
               .trace()
               .real() /
           l;
    return r;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace rismimo::testsupport

#endif
