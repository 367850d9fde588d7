// SPDX-License-Identifier: Apache-2.0
//
// Thin OpenMP wrapper. Every parallel loop in the library writes to
// per-index slots and reduces in fixed index order afterwards, so results are
// bit-identical for any worker count (including the serial reference paths).

#ifndef RISMIMO_PARALLEL_HPP
#define RISMIMO_PARALLEL_HPP

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rismimo {

inline int hardware_workers() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Run f(i) for i in [0, n). workers <= 1 runs the plain serial loop.
template <class F>
void parallel_for(std::ptrdiff_t n, int workers, F&& f) {
    if (workers <= 1) {
        for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
        return;
    }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
#else
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
#endif
}

/// Order-insensitive compensated (Kahan) accumulator for the fixed-order
/// reductions that follow a parallel fill.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace rismimo

#endif
