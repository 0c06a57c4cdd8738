#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "helios/clustering.hpp"

namespace helios {

/// Per-date tuple of station labels, in corpus station order.
using JointState = std::vector<int>;

/// Observed joint-state permutations of one season and their digital codes.
/// Codes are contiguous 1..r, assigned in lexicographic order of the tuples
/// (leftmost station most significant).
class ReducedStateSpace {
public:
    ReducedStateSpace() = default;

    // `permutations` must be distinct, lexicographically sorted and each of
    // length j with labels in 1..k. Throws Error("statespace") otherwise.
    ReducedStateSpace(Season season, std::size_t k, std::size_t j, std::vector<JointState> permutations);

    Season season() const { return season_; }
    std::size_t k() const { return k_; }
    std::size_t j() const { return j_; }
    std::size_t r() const { return permutations_.size(); }

    // k^j - r: permutations never observed.
    std::size_t unobserved() const;
    std::size_t full_size() const;  // k^j

    int encode(const JointState& state) const;
    const JointState& decode(int code) const;

    const std::vector<JointState>& permutations() const { return permutations_; }

    bool operator==(const ReducedStateSpace& other) const {
        return season_ == other.season_ && k_ == other.k_ && j_ == other.j_ &&
               permutations_ == other.permutations_;
    }

private:
    Season season_ = Season::Spring;
    std::size_t k_ = 0;
    std::size_t j_ = 0;
    std::vector<JointState> permutations_;
    std::map<JointState, int> code_of_;
};

// One JointState per date, assembling station labels in sequence order.
// Throws when a station has no label for one of the dates.
std::vector<JointState> joint_sequence(std::span<const StateSequence> per_station,
                                       std::span<const Date> dates);

// Keeps only the permutations that occur in `sequence`.
ReducedStateSpace reduce(std::span<const JointState> sequence, std::size_t k, std::size_t j,
                         Season season = Season::Spring);

std::vector<int> encode_all(const ReducedStateSpace& space, std::span<const JointState> sequence);

}  // namespace helios
