#pragma once

// Data-parallel reductions behind the daily features and the Pearson
// coefficient. Each kernel has a scalar reference implementation and, where
// the target supports it, a SIMD variant (AVX2 on x86-64, NEON on AArch64)
// chosen once at runtime. Variants agree with the scalar reference exactly
// on counts and to rounding on floating-point sums (summation order differs).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace helios::kernels {

struct CentralSums {
    double m2 = 0.0;  // sum (x - c)^2
    double m3 = 0.0;  // sum (x - c)^3
    double m4 = 0.0;  // sum (x - c)^4
};

struct Fluctuation {
    std::size_t reversals = 0;  // interior i with (x[i+1]-x[i])(x[i]-x[i-1]) < 0
    double abs_diff_sum = 0.0;  // sum |x[i+1]-x[i]|
};

struct CrossSums {
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
};

struct KernelTable {
    std::string_view name;
    double (*sum)(const double* x, std::size_t n);
    CentralSums (*central_sums)(const double* x, std::size_t n, double center);
    Fluctuation (*fluctuation)(const double* x, std::size_t n);
    CrossSums (*cross_sums)(const double* x, const double* y, std::size_t n, double cx, double cy);
};

const KernelTable& scalar_table();

// Every variant compiled in and supported by the running CPU, scalar first.
std::vector<const KernelTable*> available_tables();

// The variant used by the public wrappers below. The best supported variant
// is picked on first use; HELIOS_KERNELS=scalar in the environment forces the
// reference path.
const KernelTable& active_table();

inline double sum(std::span<const double> x) { return active_table().sum(x.data(), x.size()); }

inline CentralSums central_sums(std::span<const double> x, double center) {
    return active_table().central_sums(x.data(), x.size(), center);
}

inline Fluctuation fluctuation(std::span<const double> x) {
    return active_table().fluctuation(x.data(), x.size());
}

inline CrossSums cross_sums(std::span<const double> x, std::span<const double> y, double cx,
                            double cy) {
    return active_table().cross_sums(x.data(), y.data(), x.size() < y.size() ? x.size() : y.size(),
                                     cx, cy);
}

}  // namespace helios::kernels
