#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "helios/ingest.hpp"
#include "helios/model.hpp"
#include "helios/rng.hpp"

namespace helios {

struct SimulationConfig {
    Date calendar_start;
    std::size_t n_days = 365;
    std::uint64_t seed = 0;
    // Starting code for the first block of a season; otherwise the block
    // starts from a draw of that season's stationary distribution.
    std::map<Season, int> initial_state;

    // Inclusive calendar range.
    static SimulationConfig for_range(Date from, Date to, std::uint64_t seed);
};

/// Observed day used to realize one simulated station-day.
struct StationDay {
    Date date;          // synthetic date
    Date source_date;   // observed date the samples were copied from
    std::vector<double> samples;
};

struct SimulatedDay {
    Date date;
    Season season = Season::Spring;
    int code = 0;
    JointState labels;
};

/// Codes drawn for one contiguous same-season stretch of the calendar.
struct CodeBlock {
    Season season = Season::Spring;
    Date start;
    std::vector<int> codes;
};

struct SimulatedSeries {
    std::vector<std::string> stations;
    std::vector<SimulatedDay> days;                 // date order
    std::vector<std::vector<StationDay>> per_station;  // [station][day]
    std::vector<CodeBlock> blocks;
};

// Smallest code m with cumulative row probability >= u (inverse CDF over row
// `current`). Rounding slack past the last positive entry maps to it.
int next_state(const TransitionModel& model, int current, double u);

// Inverse-CDF draw over a probability vector, returning a 1-based index.
int sample_categorical(std::span<const double> probabilities, double u);

std::vector<int> simulate_codes(const TransitionModel& model, std::size_t n, Rng& rng, int initial);
std::vector<int> simulate_codes(const TransitionModel& model, std::size_t n, std::uint64_t seed,
                                int initial);

/// Observed aligned days of each (season, station, label), in date order.
class CandidatePools {
public:
    CandidatePools(const ModelEnvelope& envelope, const Corpus& corpus);

    // Throws Error("simulator") naming the triple when nothing matches.
    const std::vector<Date>& candidates(Season season, std::size_t station, int label) const;

private:
    std::vector<std::string> stations_;
    std::map<std::tuple<Season, std::size_t, int>, std::vector<Date>> pools_;
};

// Decodes each block and copies one uniformly drawn matching observed day per
// station per date. Draws come from `rng` in date order, then station order.
SimulatedSeries realize(std::span<const CodeBlock> blocks, const ModelEnvelope& envelope,
                        const Corpus& corpus, Rng& rng);

// Walks the calendar from config.calendar_start: state sampling for every
// season block first, then day selection, all from one Rng(config.seed).
SimulatedSeries simulate_year(const ModelEnvelope& envelope, const Corpus& corpus,
                              const SimulationConfig& config);

// Minute-resolution records of the series (date, station, minute order).
std::vector<RawRecord> to_records(const SimulatedSeries& series);

// Sidecar listing per simulated day: date, season, code, labels, source dates.
std::string sidecar_json(const SimulatedSeries& series);

// The series as a corpus, for validation.
Corpus to_corpus(const SimulatedSeries& series);

}  // namespace helios
