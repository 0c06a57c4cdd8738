#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "helios/common.hpp"

namespace helios {

using ProbabilityMatrix = std::vector<std::vector<double>>;
using CountMatrix = std::vector<std::vector<std::uint64_t>>;

/// First-order transition model over digital codes 1..r of one season.
/// Row i-1 of `matrix` is the distribution of tomorrow's code given code i.
struct TransitionModel {
    Season season = Season::Spring;
    std::size_t r = 0;
    CountMatrix counts;
    ProbabilityMatrix matrix;
    std::vector<double> fallback;  // used for rows with no observed successor

    bool operator==(const TransitionModel&) const = default;
};

inline constexpr double kRowSumTolerance = 1e-9;

// Counts consecutive pairs inside each run (runs are date-contiguous
// stretches of one season); pairs never cross run boundaries. Rows without
// observations fall back to the empirical marginal distribution of codes.
TransitionModel fit_mtpm(std::span<const std::vector<int>> runs, std::size_t r,
                         Season season = Season::Spring);
TransitionModel fit_mtpm(std::span<const int> sequence, std::size_t r, Season season = Season::Spring);

// Checks shape, entry range and row sums; throws Error("markov") describing the first violation.
void validate_stochastic(const ProbabilityMatrix& matrix);

// Power iteration from the uniform vector until the L1 change drops below
// 1e-12 or 10^6 iterations. For reducible or periodic chains the result is
// whatever the iteration reaches from uniform.
std::vector<double> stationary_distribution(const ProbabilityMatrix& matrix);
inline std::vector<double> stationary_distribution(const TransitionModel& model) {
    return stationary_distribution(model.matrix);
}

}  // namespace helios
