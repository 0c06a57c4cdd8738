#include "helios/statespace.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace helios {

ReducedStateSpace::ReducedStateSpace(Season season, std::size_t k, std::size_t j,
                                     std::vector<JointState> permutations)
    : season_(season), k_(k), j_(j), permutations_(std::move(permutations)) {
    if (k_ == 0 || j_ == 0) throw Error("statespace", "k and j must be positive");
    for (std::size_t i = 0; i < permutations_.size(); ++i) {
        const JointState& s = permutations_[i];
        if (s.size() != j_) {
            throw Error("statespace", "permutation " + std::to_string(i + 1) + " has " +
                                          std::to_string(s.size()) + " labels, expected " +
                                          std::to_string(j_));
        }
        for (int label : s) {
            if (label < 1 || static_cast<std::size_t>(label) > k_) {
                throw Error("statespace", "label " + std::to_string(label) + " outside 1.." +
                                              std::to_string(k_));
            }
        }
        if (i > 0 && !(permutations_[i - 1] < s)) {
            throw Error("statespace", "permutations must be distinct and lexicographically sorted");
        }
        code_of_.emplace(s, static_cast<int>(i + 1));
    }
}

std::size_t ReducedStateSpace::full_size() const {
    std::size_t total = 1;
    for (std::size_t i = 0; i < j_; ++i) total *= k_;
    return total;
}

std::size_t ReducedStateSpace::unobserved() const { return full_size() - r(); }

int ReducedStateSpace::encode(const JointState& state) const {
    const auto it = code_of_.find(state);
    if (it == code_of_.end()) {
        std::string text = "(";
        for (std::size_t i = 0; i < state.size(); ++i) {
            text += (i ? ",c" : "c") + std::to_string(state[i]);
        }
        throw Error("statespace", "joint state " + text + ") was never observed in season " +
                                      std::string(season_name(season_)));
    }
    return it->second;
}

const JointState& ReducedStateSpace::decode(int code) const {
    if (code < 1 || static_cast<std::size_t>(code) > r()) {
        throw Error("statespace", "code " + std::to_string(code) + " outside 1.." + std::to_string(r()));
    }
    return permutations_[static_cast<std::size_t>(code - 1)];
}

std::vector<JointState> joint_sequence(std::span<const StateSequence> per_station,
                                       std::span<const Date> dates) {
    std::vector<std::map<Date, int>> lookup(per_station.size());
    for (std::size_t s = 0; s < per_station.size(); ++s) {
        for (const auto& e : per_station[s].entries) lookup[s].emplace(e.date, e.label);
    }
    std::vector<JointState> out;
    out.reserve(dates.size());
    for (Date d : dates) {
        JointState state(per_station.size());
        for (std::size_t s = 0; s < per_station.size(); ++s) {
            const auto it = lookup[s].find(d);
            if (it == lookup[s].end()) {
                throw Error("statespace", "station " + per_station[s].station_id +
                                              " has no label on " + format_date(d));
            }
            state[s] = it->second;
        }
        out.push_back(std::move(state));
    }
    return out;
}

ReducedStateSpace reduce(std::span<const JointState> sequence, std::size_t k, std::size_t j,
                         Season season) {
    if (sequence.empty()) throw Error("statespace", "cannot reduce an empty joint sequence");
    std::set<JointState> observed(sequence.begin(), sequence.end());
    return ReducedStateSpace(season, k, j, std::vector<JointState>(observed.begin(), observed.end()));
}

std::vector<int> encode_all(const ReducedStateSpace& space, std::span<const JointState> sequence) {
    std::vector<int> codes;
    codes.reserve(sequence.size());
    for (const auto& s : sequence) codes.push_back(space.encode(s));
    return codes;
}

}  // namespace helios
