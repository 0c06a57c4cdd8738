#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "helios/common.hpp"
#include "helios/features.hpp"

namespace helios {

/// Dense row-major point set.
struct PointMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    PointMatrix() = default;
    PointMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool operator==(const PointMatrix&) const = default;
};

/// Per-column z-score parameters. A column with zero spread maps to zeros.
struct Normalization {
    std::vector<double> mean;
    std::vector<double> std;

    bool operator==(const Normalization&) const = default;
};

struct Normalized {
    PointMatrix points;
    Normalization params;
};

// Z-scores every column with its mean and sample (N-1) standard deviation.
// Throws Error("clustering") when there are fewer than `k` rows.
Normalized normalize(const PointMatrix& raw, std::size_t k);
Normalized normalize(std::span<const FeatureVector> features, std::size_t k);

std::vector<double> apply_normalization(const Normalization& params, std::span<const double> raw);

struct KMeansResult {
    PointMatrix centroids;           // k x cols
    std::vector<std::size_t> assignment;  // per point, raw cluster index
    std::size_t iterations = 0;
    std::vector<double> inertia;     // within-cluster sum of squares after each update
};

inline constexpr std::size_t kMaxLloydIterations = 300;
inline constexpr std::size_t kKMeansRestarts = 10;

// k-means++ seeding then Lloyd iterations until no assignment changes or the
// iteration cap. Empty clusters are reseeded at the point farthest from its
// centroid. The whole procedure runs `restarts` times from seeds derived from
// `seed` and the run with the lowest within-cluster sum of squares is kept.
// Deterministic in `seed`. Needs at least k distinct points.
KMeansResult kmeans(const PointMatrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = kKMeansRestarts);

// Index of the nearest row of `centroids` (Euclidean); ties go to the lower index.
std::size_t nearest_centroid(const PointMatrix& centroids, std::span<const double> point);

// Returns label_of[raw] in 1..k: denormalized centroid mean descending, then
// denormalized MFI ascending, then raw index. Centroid columns follow the
// FeatureVector order.
std::vector<int> order_by_suitability(const PointMatrix& centroids, const Normalization& params);

/// Fitted clusters for one station and season. Labels 1..k are the daily
/// states c1..ck, c1 being the most suitable for generation.
struct ClusterModel {
    std::string station_id;
    Season season = Season::Spring;
    std::size_t k = 0;
    Normalization normalization;
    PointMatrix centroids;        // normalized feature space, k x 5
    std::vector<int> label_of;    // raw k-means index -> label

    int label(const FeatureVector& features) const;
    bool operator==(const ClusterModel&) const = default;
};

struct ClusterFit {
    ClusterModel model;
    std::vector<int> labels;  // per input feature vector
};

ClusterFit fit_cluster_model(const std::string& station_id, Season season,
                             std::span<const FeatureVector> features, std::size_t k,
                             std::uint64_t seed);

struct StateEntry {
    Date date;
    int label = 0;
    bool operator==(const StateEntry&) const = default;
};

/// Date-ordered daily states of one station in one season.
struct StateSequence {
    std::string station_id;
    Season season = Season::Spring;
    std::vector<StateEntry> entries;
};

// Labels each profile via the model; profiles must be in strictly increasing date order.
StateSequence label_days(const ClusterModel& model, std::span<const DailyProfile* const> profiles);

}  // namespace helios
