#include <cmath>

#include "tables.hpp"

namespace helios::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

CentralSums central_scalar(const double* x, std::size_t n, double center) {
    CentralSums out;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - center;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    return out;
}

Fluctuation fluctuation_scalar(const double* x, std::size_t n) {
    Fluctuation out;
    if (n < 2) return out;
    double prev = x[1] - x[0];
    out.abs_diff_sum = std::fabs(prev);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double next = x[i + 1] - x[i];
        if (next * prev < 0.0) ++out.reversals;
        out.abs_diff_sum += std::fabs(next);
        prev = next;
    }
    return out;
}

CrossSums cross_scalar(const double* x, const double* y, std::size_t n, double cx, double cy) {
    CrossSums out;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - cx;
        const double dy = y[i] - cy;
        out.sxx += dx * dx;
        out.syy += dy * dy;
        out.sxy += dx * dy;
    }
    return out;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", &sum_scalar, &central_scalar, &fluctuation_scalar,
                                   &cross_scalar};
    return table;
}

}  // namespace helios::kernels
