#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "helios/clustering.hpp"
#include "helios/ingest.hpp"
#include "helios/markov.hpp"
#include "helios/statespace.hpp"

namespace helios {

inline constexpr int kSchemaVersion = 1;

/// Everything fitted for one season.
struct SeasonModel {
    std::vector<ClusterModel> cluster_models;  // one per station, corpus order
    ReducedStateSpace state_space;
    TransitionModel transitions;

    bool operator==(const SeasonModel&) const = default;
};

struct FitMetadata {
    std::string first_date;
    std::string last_date;
    std::uint64_t seed = 0;
    std::size_t aligned_days = 0;
    int max_gap_minutes = CleaningPolicy{}.max_gap_minutes;
    std::string season_rule = "meteorological";

    bool operator==(const FitMetadata&) const = default;
};

/// The persisted model: station order, k, and the per-season fits.
struct ModelEnvelope {
    int schema_version = kSchemaVersion;
    std::vector<std::string> stations;
    std::size_t k = 4;
    std::map<Season, SeasonModel> seasons;
    FitMetadata metadata;

    const SeasonModel& season(Season s) const;  // throws if the season was not fitted
    bool operator==(const ModelEnvelope&) const = default;
};

/// Intermediate products of fitting one season, kept for inspection and tests.
struct SeasonFit {
    std::vector<Date> dates;                   // aligned dates in this season
    std::vector<StateSequence> states;         // per station
    std::vector<JointState> joint;             // per date
    std::vector<std::vector<int>> code_runs;   // date-contiguous runs of codes
};

struct FitOptions {
    std::size_t k = 4;
    std::uint64_t seed = 0;
    CleaningPolicy cleaning;  // recorded in metadata only
};

// Fits every season that has enough aligned days (>= k distinct feature
// vectors per station and >= 2 days). Seasons without enough data are
// skipped with a warning; throws when no season can be fitted.
ModelEnvelope fit_model(const Corpus& corpus, const FitOptions& options,
                        std::map<Season, SeasonFit>* details = nullptr);

// Splits date-ordered codes into runs of consecutive calendar days.
std::vector<std::vector<int>> split_contiguous(std::span<const Date> dates, std::span<const int> codes);

nlohmann::json save(const ModelEnvelope& envelope);
ModelEnvelope load(const nlohmann::json& document);

void save_model_file(const ModelEnvelope& envelope, const std::filesystem::path& path);
ModelEnvelope load_model_file(const std::filesystem::path& path);

// Serialized text of a model exactly as written by save_model_file.
std::string dump_model(const ModelEnvelope& envelope);

}  // namespace helios
