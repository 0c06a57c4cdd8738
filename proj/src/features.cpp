#include "helios/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "helios/kernels.hpp"

namespace helios {
namespace {

void require_length(std::span<const double> samples, std::size_t minimum, const char* op) {
    if (samples.size() < minimum) {
        throw Error("features", std::string(op) + " needs at least " + std::to_string(minimum) +
                                    " samples, got " + std::to_string(samples.size()));
    }
}

}  // namespace

std::size_t rfc(std::span<const double> samples) {
    require_length(samples, 3, "rfc");
    return kernels::fluctuation(samples).reversals;
}

double afm(std::span<const double> samples) {
    require_length(samples, 2, "afm");
    return kernels::fluctuation(samples).abs_diff_sum / static_cast<double>(samples.size() - 1);
}

double mfi(std::span<const double> samples) {
    require_length(samples, 3, "mfi");
    const auto f = kernels::fluctuation(samples);
    return static_cast<double>(f.reversals) * (f.abs_diff_sum / static_cast<double>(samples.size() - 1));
}

FeatureVector extract(std::span<const double> samples) {
    require_length(samples, 3, "extract");
    const double n = static_cast<double>(samples.size());

    FeatureVector fv;
    fv.mean = kernels::sum(samples) / n;
    const auto cs = kernels::central_sums(samples, fv.mean);
    // An exactly constant day has zero spread even when the computed mean
    // carries rounding error.
    const bool constant = std::ranges::all_of(samples, [&](double v) { return v == samples[0]; });
    if (constant) fv.mean = samples[0];
    fv.std = constant ? 0.0 : std::sqrt(cs.m2 / (n - 1.0));
    if (fv.std > 0.0) {
        const double s2 = fv.std * fv.std;
        fv.skewness = cs.m3 / (n * s2 * fv.std);
        fv.kurtosis = cs.m4 / (n * s2 * s2) - 3.0;
    }
    const auto fl = kernels::fluctuation(samples);
    fv.mfi = static_cast<double>(fl.reversals) * (fl.abs_diff_sum / (n - 1.0));
    return fv;
}

}  // namespace helios
