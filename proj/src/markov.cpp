#include "helios/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace helios {

TransitionModel fit_mtpm(std::span<const std::vector<int>> runs, std::size_t r, Season season) {
    if (r == 0) throw Error("markov", "state count r must be positive");
    TransitionModel model;
    model.season = season;
    model.r = r;
    model.counts.assign(r, std::vector<std::uint64_t>(r, 0));
    std::vector<std::uint64_t> occurrences(r, 0);
    std::uint64_t total = 0;

    for (const auto& run : runs) {
        for (std::size_t t = 0; t < run.size(); ++t) {
            const int code = run[t];
            if (code < 1 || static_cast<std::size_t>(code) > r) {
                throw Error("markov", "code " + std::to_string(code) + " outside 1.." + std::to_string(r));
            }
            ++occurrences[static_cast<std::size_t>(code - 1)];
            ++total;
            if (t > 0) {
                ++model.counts[static_cast<std::size_t>(run[t - 1] - 1)][static_cast<std::size_t>(code - 1)];
            }
        }
    }
    if (total < 2) throw Error("markov", "need at least 2 coded days to fit transitions");

    model.fallback.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        model.fallback[i] = static_cast<double>(occurrences[i]) / static_cast<double>(total);
    }
    model.matrix.assign(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i) {
        std::uint64_t row_total = 0;
        for (auto c : model.counts[i]) row_total += c;
        if (row_total == 0) {
            model.matrix[i] = model.fallback;
            continue;
        }
        for (std::size_t j = 0; j < r; ++j) {
            model.matrix[i][j] = static_cast<double>(model.counts[i][j]) / static_cast<double>(row_total);
        }
    }
    return model;
}

TransitionModel fit_mtpm(std::span<const int> sequence, std::size_t r, Season season) {
    const std::vector<std::vector<int>> runs{std::vector<int>(sequence.begin(), sequence.end())};
    return fit_mtpm(runs, r, season);
}

void validate_stochastic(const ProbabilityMatrix& matrix) {
    const std::size_t r = matrix.size();
    if (r == 0) throw Error("markov", "empty transition matrix");
    for (std::size_t i = 0; i < r; ++i) {
        if (matrix[i].size() != r) {
            throw Error("markov", "row " + std::to_string(i + 1) + " has " +
                                      std::to_string(matrix[i].size()) + " entries, expected " +
                                      std::to_string(r));
        }
        double sum = 0.0;
        for (double p : matrix[i]) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw Error("markov", "row " + std::to_string(i + 1) + " has an entry outside [0,1]");
            }
            sum += p;
        }
        if (std::fabs(sum - 1.0) > kRowSumTolerance) {
            throw Error("markov", "row " + std::to_string(i + 1) + " sums to " + std::to_string(sum));
        }
    }
}

std::vector<double> stationary_distribution(const ProbabilityMatrix& matrix) {
    constexpr double kTolerance = 1e-12;
    constexpr std::size_t kMaxIterations = 1'000'000;
    const std::size_t r = matrix.size();
    std::vector<double> pi(r, 1.0 / static_cast<double>(r));
    std::vector<double> next(r);
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < r; ++i) {
            const double w = pi[i];
            if (w == 0.0) continue;
            const auto& row = matrix[i];
            for (std::size_t j = 0; j < r; ++j) next[j] += w * row[j];
        }
        double norm = 0.0;
        for (double v : next) norm += v;
        double change = 0.0;
        for (std::size_t j = 0; j < r; ++j) {
            next[j] /= norm;
            change += std::fabs(next[j] - pi[j]);
        }
        pi.swap(next);
        if (change < kTolerance) break;
    }
    return pi;
}

}  // namespace helios
