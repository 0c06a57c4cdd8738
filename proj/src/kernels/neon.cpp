#include <arm_neon.h>

#include <cmath>

#include "tables.hpp"

namespace helios::kernels {
namespace {

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

CentralSums central_neon(const double* x, std::size_t n, double center) {
    const float64x2_t c = vdupq_n_f64(center);
    float64x2_t a2 = vdupq_n_f64(0.0);
    float64x2_t a3 = vdupq_n_f64(0.0);
    float64x2_t a4 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(x + i), c);
        const float64x2_t d2 = vmulq_f64(d, d);
        a2 = vaddq_f64(a2, d2);
        a3 = vaddq_f64(a3, vmulq_f64(d2, d));
        a4 = vaddq_f64(a4, vmulq_f64(d2, d2));
    }
    CentralSums out{vaddvq_f64(a2), vaddvq_f64(a3), vaddvq_f64(a4)};
    for (; i < n; ++i) {
        const double d = x[i] - center;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    return out;
}

Fluctuation fluctuation_neon(const double* x, std::size_t n) {
    Fluctuation out;
    if (n < 2) return out;
    const float64x2_t zero = vdupq_n_f64(0.0);
    float64x2_t abs_acc = vdupq_n_f64(0.0);
    std::size_t reversals = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 2) {
        const float64x2_t x0 = vld1q_f64(x + i);
        const float64x2_t x1 = vld1q_f64(x + i + 1);
        const float64x2_t x2 = vld1q_f64(x + i + 2);
        const float64x2_t prev = vsubq_f64(x1, x0);
        const float64x2_t next = vsubq_f64(x2, x1);
        abs_acc = vaddq_f64(abs_acc, vabsq_f64(prev));
        const uint64x2_t neg = vcltq_f64(vmulq_f64(next, prev), zero);
        reversals += static_cast<std::size_t>((vgetq_lane_u64(neg, 0) & 1u) +
                                              (vgetq_lane_u64(neg, 1) & 1u));
    }
    double abs_sum = vaddvq_f64(abs_acc);
    for (; i + 1 < n; ++i) {
        const double prev = x[i + 1] - x[i];
        abs_sum += std::fabs(prev);
        if (i + 2 < n) {
            const double next = x[i + 2] - x[i + 1];
            if (next * prev < 0.0) ++reversals;
        }
    }
    out.reversals = reversals;
    out.abs_diff_sum = abs_sum;
    return out;
}

CrossSums cross_neon(const double* x, const double* y, std::size_t n, double cx, double cy) {
    const float64x2_t vcx = vdupq_n_f64(cx);
    const float64x2_t vcy = vdupq_n_f64(cy);
    float64x2_t axx = vdupq_n_f64(0.0);
    float64x2_t ayy = vdupq_n_f64(0.0);
    float64x2_t axy = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(x + i), vcx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(y + i), vcy);
        axx = vaddq_f64(axx, vmulq_f64(dx, dx));
        ayy = vaddq_f64(ayy, vmulq_f64(dy, dy));
        axy = vaddq_f64(axy, vmulq_f64(dx, dy));
    }
    CrossSums out{vaddvq_f64(axx), vaddvq_f64(ayy), vaddvq_f64(axy)};
    for (; i < n; ++i) {
        const double dx = x[i] - cx;
        const double dy = y[i] - cy;
        out.sxx += dx * dx;
        out.syy += dy * dy;
        out.sxy += dx * dy;
    }
    return out;
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table{"neon", &sum_neon, &central_neon, &fluctuation_neon,
                                   &cross_neon};
    return table;
}

}  // namespace helios::kernels
