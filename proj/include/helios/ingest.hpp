#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "helios/common.hpp"

namespace helios {

/// One CSV row: a minute-aligned station-local timestamp and its GHI reading.
struct RawRecord {
    Date date;
    int minute_of_day = 0;  // 0..1439
    std::string station_id;
    double ghi = 0.0;  // W/m^2, uncleaned

    bool operator==(const RawRecord&) const = default;
};

struct CleaningPolicy {
    int max_gap_minutes = 30;
};

/// One station-day restricted to the solar window: samples[i] is minute
/// kWindowBegin + i. Always kSamplesPerDay non-negative finite values.
struct DailyProfile {
    std::string station_id;
    Date date;
    Season season = Season::Spring;
    std::vector<double> samples;

    bool operator==(const DailyProfile&) const = default;
};

/// Cleaned station-days for an ordered set of stations. The station order is
/// the row order of every joint state built from this corpus.
class Corpus {
public:
    // Profiles may arrive in any order; every profile's station must be in
    // `stations`. Throws Error("ingest") on duplicates or invalid profiles.
    Corpus(std::vector<std::string> stations, std::vector<DailyProfile> profiles);

    const std::vector<std::string>& stations() const { return stations_; }
    std::size_t station_count() const { return stations_.size(); }
    std::size_t station_index(const std::string& station_id) const;  // throws if unknown

    const std::map<Date, DailyProfile>& days(std::size_t station) const { return days_.at(station); }
    const DailyProfile* find(std::size_t station, Date date) const;

    // Dates present for every station, strictly increasing.
    const std::vector<Date>& alignment() const { return alignment_; }

    bool operator==(const Corpus&) const = default;

private:
    std::vector<std::string> stations_;
    std::vector<std::map<Date, DailyProfile>> days_;
    std::vector<Date> alignment_;
};

// Reads `timestamp,station_id,ghi_wm2` CSV. Errors name the 1-based line.
std::vector<RawRecord> parse_csv(std::istream& in);
std::vector<RawRecord> read_csv_file(const std::filesystem::path& path);

// Slices records into cleaned station-day windows and aligns stations.
// Station order is order of first appearance in `records`.
Corpus build_days(std::span<const RawRecord> records, const CleaningPolicy& policy = {});

// Meteorological seasons: MAM spring, JJA summer, SON autumn, DJF winter.
Season assign_season(Date date);

// Round-trip form of a Corpus (raw records in window, one per sample).
std::vector<RawRecord> to_records(const Corpus& corpus);

// Writes records as canonical CSV with shortest round-trip GHI formatting.
void write_csv(std::ostream& out, std::span<const RawRecord> records);

// Formats a double with the shortest representation that parses back exactly.
std::string format_number(double value);

// JSON dump of a cleaned corpus (`ingest` output); load accepts what save emits.
void save_corpus_json(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus_json(const std::filesystem::path& path);

// Loads a corpus from canonical CSV or, for a `.json` path, from a corpus dump.
Corpus load_corpus(const std::filesystem::path& path, const CleaningPolicy& policy = {});

}  // namespace helios
