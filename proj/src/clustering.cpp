#include "helios/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "helios/rng.hpp"

namespace helios {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        d += t * t;
    }
    return d;
}

std::size_t count_distinct_rows(const PointMatrix& points) {
    std::vector<std::size_t> order(points.rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto less = [&](std::size_t a, std::size_t b) {
        return std::ranges::lexicographical_compare(points.row(a), points.row(b));
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t distinct = points.rows == 0 ? 0 : 1;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (!std::ranges::equal(points.row(order[i - 1]), points.row(order[i]))) ++distinct;
    }
    return distinct;
}

PointMatrix seed_plus_plus(const PointMatrix& points, std::size_t k, Rng& rng) {
    PointMatrix centroids(k, points.cols);
    const std::size_t n = points.rows;
    std::size_t chosen = rng.index(n);
    std::ranges::copy(points.row(chosen), centroids.row(0).begin());

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), centroids.row(0));

    for (std::size_t c = 1; c < k; ++c) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        const double target = rng.uniform_open() * total;
        double cumulative = 0.0;
        chosen = n;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            last_positive = i;
            cumulative += d2[i];
            if (cumulative >= target) {
                chosen = i;
                break;
            }
        }
        if (chosen == n) chosen = last_positive;
        std::ranges::copy(points.row(chosen), centroids.row(c).begin());
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points.row(i), centroids.row(c)));
        }
    }
    return centroids;
}

double within_cluster_ss(const PointMatrix& points, const PointMatrix& centroids,
                         const std::vector<std::size_t>& assignment) {
    double w = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i) {
        w += squared_distance(points.row(i), centroids.row(assignment[i]));
    }
    return w;
}

bool is_constant(std::span<const double> column_values) {
    return std::ranges::all_of(column_values, [&](double v) { return v == column_values[0]; });
}

}  // namespace

Normalized normalize(const PointMatrix& raw, std::size_t k) {
    if (raw.rows < k || raw.rows == 0) {
        throw Error("clustering", "normalize needs at least k=" + std::to_string(k) +
                                      " vectors, got " + std::to_string(raw.rows));
    }
    Normalized out{PointMatrix(raw.rows, raw.cols), {}};
    out.params.mean.assign(raw.cols, 0.0);
    out.params.std.assign(raw.cols, 0.0);
    const double n = static_cast<double>(raw.rows);
    std::vector<double> column(raw.rows);
    for (std::size_t j = 0; j < raw.cols; ++j) {
        for (std::size_t i = 0; i < raw.rows; ++i) column[i] = raw.at(i, j);
        if (is_constant(column)) {
            out.params.mean[j] = column[0];
            continue;
        }
        const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : column) ss += (v - mean) * (v - mean);
        out.params.mean[j] = mean;
        out.params.std[j] = raw.rows > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    }
    for (std::size_t i = 0; i < raw.rows; ++i) {
        const auto z = apply_normalization(out.params, raw.row(i));
        std::ranges::copy(z, out.points.row(i).begin());
    }
    return out;
}

Normalized normalize(std::span<const FeatureVector> features, std::size_t k) {
    PointMatrix raw(features.size(), kFeatureCount);
    for (std::size_t i = 0; i < features.size(); ++i) {
        std::ranges::copy(features[i].as_array(), raw.row(i).begin());
    }
    return normalize(raw, k);
}

std::vector<double> apply_normalization(const Normalization& params, std::span<const double> raw) {
    std::vector<double> z(raw.size(), 0.0);
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (params.std[j] > 0.0) z[j] = (raw[j] - params.mean[j]) / params.std[j];
    }
    return z;
}

std::size_t nearest_centroid(const PointMatrix& centroids, std::span<const double> point) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.rows; ++c) {
        const double d = squared_distance(point, centroids.row(c));
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

namespace {

KMeansResult lloyd(const PointMatrix& points, std::size_t k, Rng& rng) {
    KMeansResult result;
    result.centroids = seed_plus_plus(points, k, rng);
    const std::size_t n = points.rows;
    result.assignment.assign(n, k);  // k = unassigned

    const auto assign = [&] {
        std::size_t changes = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = nearest_centroid(result.centroids, points.row(i));
            if (c != result.assignment[i]) {
                result.assignment[i] = c;
                ++changes;
            }
        }
        return changes;
    };

    bool converged = false;
    while (result.iterations < kMaxLloydIterations) {
        if (assign() == 0) {
            converged = true;
            break;
        }
        ++result.iterations;

        std::vector<std::size_t> members(k, 0);
        std::fill(result.centroids.data.begin(), result.centroids.data.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = result.assignment[i];
            ++members[c];
            auto dst = result.centroids.row(c);
            const auto src = points.row(i);
            for (std::size_t j = 0; j < points.cols; ++j) dst[j] += src[j];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (members[c] == 0) continue;
            for (double& v : result.centroids.row(c)) v /= static_cast<double>(members[c]);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (members[c] != 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t owner = result.assignment[i];
                if (members[owner] < 2) continue;
                const double d = squared_distance(points.row(i), result.centroids.row(owner));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --members[result.assignment[far]];
            result.assignment[far] = c;
            members[c] = 1;
            std::ranges::copy(points.row(far), result.centroids.row(c).begin());
        }
        result.inertia.push_back(within_cluster_ss(points, result.centroids, result.assignment));
    }
    if (!converged) assign();
    return result;
}

}  // namespace

KMeansResult kmeans(const PointMatrix& points, std::size_t k, std::uint64_t seed, std::size_t restarts) {
    if (k == 0) throw Error("clustering", "k must be positive");
    if (restarts == 0) throw Error("clustering", "restarts must be positive");
    if (count_distinct_rows(points) < k) {
        throw Error("clustering", "k-means needs at least k=" + std::to_string(k) +
                                      " distinct points, got " + std::to_string(count_distinct_rows(points)));
    }
    KMeansResult best;
    double best_ss = 0.0;
    for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
        Rng rng(mix_seed(seed, attempt));
        KMeansResult run = lloyd(points, k, rng);
        const double ss = within_cluster_ss(points, run.centroids, run.assignment);
        // Strictly lower only, so ties keep the earliest attempt.
        if (attempt == 0 || ss < best_ss) {
            best = std::move(run);
            best_ss = ss;
        }
    }
    return best;
}

std::vector<int> order_by_suitability(const PointMatrix& centroids, const Normalization& params) {
    constexpr std::size_t kMeanCol = 0;
    constexpr std::size_t kMfiCol = 4;
    const auto denorm = [&](std::size_t c, std::size_t col) {
        if (col >= centroids.cols) return 0.0;
        return centroids.at(c, col) * params.std[col] + params.mean[col];
    };
    std::vector<std::size_t> order(centroids.rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = denorm(a, kMeanCol), mb = denorm(b, kMeanCol);
        if (ma != mb) return ma > mb;
        const double fa = denorm(a, kMfiCol), fb = denorm(b, kMfiCol);
        if (fa != fb) return fa < fb;
        return a < b;
    });
    std::vector<int> label_of(centroids.rows, 0);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        label_of[order[rank]] = static_cast<int>(rank + 1);
    }
    return label_of;
}

int ClusterModel::label(const FeatureVector& features) const {
    const auto raw = features.as_array();
    const auto z = apply_normalization(normalization, raw);
    return label_of[nearest_centroid(centroids, z)];
}

ClusterFit fit_cluster_model(const std::string& station_id, Season season,
                             std::span<const FeatureVector> features, std::size_t k,
                             std::uint64_t seed) {
    const Normalized norm = normalize(features, k);
    KMeansResult km = kmeans(norm.points, k, seed);
    ClusterFit fit;
    fit.model.station_id = station_id;
    fit.model.season = season;
    fit.model.k = k;
    fit.model.normalization = norm.params;
    fit.model.label_of = order_by_suitability(km.centroids, norm.params);
    fit.model.centroids = std::move(km.centroids);
    fit.labels.reserve(features.size());
    for (std::size_t a : km.assignment) fit.labels.push_back(fit.model.label_of[a]);
    return fit;
}

StateSequence label_days(const ClusterModel& model, std::span<const DailyProfile* const> profiles) {
    StateSequence seq{model.station_id, model.season, {}};
    seq.entries.reserve(profiles.size());
    for (const DailyProfile* p : profiles) {
        if (!seq.entries.empty() && !(seq.entries.back().date < p->date)) {
            throw Error("clustering", "label_days needs strictly increasing dates");
        }
        seq.entries.push_back({p->date, model.label(extract(*p))});
    }
    return seq;
}

}  // namespace helios
