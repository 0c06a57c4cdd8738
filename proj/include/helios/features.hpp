#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "helios/ingest.hpp"

namespace helios {

inline constexpr std::size_t kFeatureCount = 5;

/// Daily features of one station-day, in the fixed order used for clustering.
struct FeatureVector {
    double mean = 0.0;
    double std = 0.0;       // sample standard deviation (N-1)
    double skewness = 0.0;  // (1/N) sum ((x-mean)/std)^3
    double kurtosis = 0.0;  // (1/N) sum ((x-mean)/std)^4 - 3
    double mfi = 0.0;       // reverse fluctuation count * average fluctuation magnitude

    std::array<double, kFeatureCount> as_array() const { return {mean, std, skewness, kurtosis, mfi}; }
    static FeatureVector from_array(const std::array<double, kFeatureCount>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
    bool operator==(const FeatureVector&) const = default;
};

// Number of interior points where consecutive differences change sign
// (strictly; a zero difference never counts). Requires >= 3 samples.
std::size_t rfc(std::span<const double> samples);

// Mean absolute consecutive difference over the N-1 differences. Requires >= 2 samples.
double afm(std::span<const double> samples);

// rfc * afm. Requires >= 3 samples.
double mfi(std::span<const double> samples);

// All five features. A zero standard deviation yields skewness = kurtosis = 0.
// Requires >= 3 samples.
FeatureVector extract(std::span<const double> samples);
inline FeatureVector extract(const DailyProfile& profile) { return extract(profile.samples); }

}  // namespace helios
