// Compiled with -mavx2 only; callers must check the CPU before dispatching here.
#include <immintrin.h>

#include <bit>
#include <cmath>

#include "tables.hpp"

namespace helios::kernels {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline __m256d vabs(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    if (i + 4 <= n) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        i += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

CentralSums central_avx2(const double* x, std::size_t n, double center) {
    const __m256d c = _mm256_set1_pd(center);
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    __m256d a4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        const __m256d d2 = _mm256_mul_pd(d, d);
        a2 = _mm256_add_pd(a2, d2);
        a3 = _mm256_add_pd(a3, _mm256_mul_pd(d2, d));
        a4 = _mm256_add_pd(a4, _mm256_mul_pd(d2, d2));
    }
    CentralSums out{hsum(a2), hsum(a3), hsum(a4)};
    for (; i < n; ++i) {
        const double d = x[i] - center;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    return out;
}

Fluctuation fluctuation_avx2(const double* x, std::size_t n) {
    Fluctuation out;
    if (n < 2) return out;
    const __m256d zero = _mm256_setzero_pd();
    __m256d abs_acc = _mm256_setzero_pd();
    std::size_t reversals = 0;
    // Lane l of iteration i covers difference index i+l (x[i+l+1]-x[i+l])
    // and the reversal test at interior point i+l+1.
    std::size_t i = 0;
    for (; i + 6 <= n; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(x + i);
        const __m256d x1 = _mm256_loadu_pd(x + i + 1);
        const __m256d x2 = _mm256_loadu_pd(x + i + 2);
        const __m256d prev = _mm256_sub_pd(x1, x0);
        const __m256d next = _mm256_sub_pd(x2, x1);
        abs_acc = _mm256_add_pd(abs_acc, vabs(prev));
        const __m256d prod = _mm256_mul_pd(next, prev);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(prod, zero, _CMP_LT_OQ));
        reversals += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
    }
    double abs_sum = hsum(abs_acc);
    // Tail: remaining differences i..n-2 and reversal points i+1..n-2.
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

CrossSums cross_avx2(const double* x, const double* y, std::size_t n, double cx, double cy) {
    const __m256d vcx = _mm256_set1_pd(cx);
    const __m256d vcy = _mm256_set1_pd(cy);
    __m256d axx = _mm256_setzero_pd();
    __m256d ayy = _mm256_setzero_pd();
    __m256d axy = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vcx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vcy);
        axx = _mm256_add_pd(axx, _mm256_mul_pd(dx, dx));
        ayy = _mm256_add_pd(ayy, _mm256_mul_pd(dy, dy));
        axy = _mm256_add_pd(axy, _mm256_mul_pd(dx, dy));
    }
    CrossSums out{hsum(axx), hsum(ayy), hsum(axy)};
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

const KernelTable& avx2_table() {
    static const KernelTable table{"avx2", &sum_avx2, &central_avx2, &fluctuation_avx2,
                                   &cross_avx2};
    return table;
}

}  // namespace helios::kernels
