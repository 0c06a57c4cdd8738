#include "helios/simulator.hpp"

#include <nlohmann/json.hpp>
#include <tuple>

namespace helios {

SimulationConfig SimulationConfig::for_range(Date from, Date to, std::uint64_t seed) {
    if (to < from) throw Error("simulator", "--to precedes --from");
    SimulationConfig config;
    config.calendar_start = from;
    config.n_days = static_cast<std::size_t>((to - from).count()) + 1;
    config.seed = seed;
    return config;
}

int sample_categorical(std::span<const double> probabilities, double u) {
    double cumulative = 0.0;
    int last_positive = 1;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] <= 0.0) continue;
        cumulative += probabilities[i];
        last_positive = static_cast<int>(i + 1);
        if (cumulative >= u) return last_positive;
    }
    return last_positive;
}

int next_state(const TransitionModel& model, int current, double u) {
    if (current < 1 || static_cast<std::size_t>(current) > model.r) {
        throw Error("simulator", "current code " + std::to_string(current) + " outside 1.." +
                                     std::to_string(model.r));
    }
    return sample_categorical(model.matrix[static_cast<std::size_t>(current - 1)], u);
}

std::vector<int> simulate_codes(const TransitionModel& model, std::size_t n, Rng& rng, int initial) {
    if (n == 0) throw Error("simulator", "number of days must be at least 1");
    if (initial < 1 || static_cast<std::size_t>(initial) > model.r) {
        throw Error("simulator", "initial code " + std::to_string(initial) + " outside 1.." +
                                     std::to_string(model.r));
    }
    std::vector<int> codes;
    codes.reserve(n);
    codes.push_back(initial);
    while (codes.size() < n) codes.push_back(next_state(model, codes.back(), rng.uniform_open()));
    return codes;
}

std::vector<int> simulate_codes(const TransitionModel& model, std::size_t n, std::uint64_t seed,
                                int initial) {
    Rng rng(seed);
    return simulate_codes(model, n, rng, initial);
}

CandidatePools::CandidatePools(const ModelEnvelope& envelope, const Corpus& corpus)
    : stations_(envelope.stations) {
    if (corpus.stations() != envelope.stations) {
        throw Error("simulator", "corpus stations do not match the model's station order");
    }
    for (Date d : corpus.alignment()) {
        const Season season = assign_season(d);
        const auto it = envelope.seasons.find(season);
        if (it == envelope.seasons.end()) continue;
        for (std::size_t s = 0; s < stations_.size(); ++s) {
            const int label = it->second.cluster_models[s].label(extract(*corpus.find(s, d)));
            pools_[{season, s, label}].push_back(d);
        }
    }
}

const std::vector<Date>& CandidatePools::candidates(Season season, std::size_t station, int label) const {
    const auto it = pools_.find({season, station, label});
    if (it == pools_.end() || it->second.empty()) {
        throw Error("simulator", "no observed day for (station " + stations_.at(station) + ", label c" +
                                     std::to_string(label) + ", season " +
                                     std::string(season_name(season)) + ")");
    }
    return it->second;
}

SimulatedSeries realize(std::span<const CodeBlock> blocks, const ModelEnvelope& envelope,
                        const Corpus& corpus, Rng& rng) {
    const CandidatePools pools(envelope, corpus);
    SimulatedSeries out;
    out.stations = envelope.stations;
    out.per_station.resize(out.stations.size());
    out.blocks.assign(blocks.begin(), blocks.end());

    for (const CodeBlock& block : blocks) {
        const SeasonModel& sm = envelope.season(block.season);
        Date date = block.start;
        for (int code : block.codes) {
            const JointState& labels = sm.state_space.decode(code);
            out.days.push_back({date, block.season, code, labels});
            for (std::size_t s = 0; s < out.stations.size(); ++s) {
                const auto& pool = pools.candidates(block.season, s, labels[s]);
                const Date source = pool[rng.index(pool.size())];
                out.per_station[s].push_back({date, source, corpus.find(s, source)->samples});
            }
            date += std::chrono::days{1};
        }
    }
    return out;
}

SimulatedSeries simulate_year(const ModelEnvelope& envelope, const Corpus& corpus,
                              const SimulationConfig& config) {
    if (config.n_days == 0) throw Error("simulator", "number of days must be at least 1");
    Rng rng(config.seed);

    std::vector<CodeBlock> blocks;
    Date date = config.calendar_start;
    for (std::size_t i = 0; i < config.n_days; ++i, date += std::chrono::days{1}) {
        const Season season = assign_season(date);
        if (blocks.empty() || blocks.back().season != season) blocks.push_back({season, date, {}});
        blocks.back().codes.push_back(0);
    }

    std::map<Season, bool> started;
    for (CodeBlock& block : blocks) {
        const TransitionModel& tm = envelope.season(block.season).transitions;
        int initial = 0;
        const auto configured = config.initial_state.find(block.season);
        if (configured != config.initial_state.end() && !started[block.season]) {
            initial = configured->second;
        } else {
            initial = sample_categorical(stationary_distribution(tm), rng.uniform_open());
        }
        started[block.season] = true;
        block.codes = simulate_codes(tm, block.codes.size(), rng, initial);
    }
    return realize(blocks, envelope, corpus, rng);
}

std::vector<RawRecord> to_records(const SimulatedSeries& series) {
    std::vector<RawRecord> out;
    out.reserve(series.days.size() * series.stations.size() * kSamplesPerDay);
    for (std::size_t d = 0; d < series.days.size(); ++d) {
        for (std::size_t s = 0; s < series.stations.size(); ++s) {
            const StationDay& sd = series.per_station[s][d];
            for (int m = 0; m < kSamplesPerDay; ++m) {
                out.push_back({sd.date, kWindowBegin + m, series.stations[s],
                               sd.samples[static_cast<std::size_t>(m)]});
            }
        }
    }
    return out;
}

std::string sidecar_json(const SimulatedSeries& series) {
    nlohmann::json days = nlohmann::json::array();
    for (std::size_t d = 0; d < series.days.size(); ++d) {
        const SimulatedDay& day = series.days[d];
        nlohmann::json sources = nlohmann::json::object();
        for (std::size_t s = 0; s < series.stations.size(); ++s) {
            sources[series.stations[s]] = format_date(series.per_station[s][d].source_date);
        }
        days.push_back({{"date", format_date(day.date)},
                        {"season", season_name(day.season)},
                        {"code", day.code},
                        {"labels", day.labels},
                        {"sources", sources}});
    }
    const nlohmann::json doc{{"stations", series.stations}, {"days", days}};
    return doc.dump(1) + "\n";
}

Corpus to_corpus(const SimulatedSeries& series) {
    std::vector<DailyProfile> profiles;
    for (std::size_t s = 0; s < series.stations.size(); ++s) {
        for (const StationDay& sd : series.per_station[s]) {
            profiles.push_back({series.stations[s], sd.date, assign_season(sd.date), sd.samples});
        }
    }
    return Corpus(series.stations, std::move(profiles));
}

}  // namespace helios
