#include "helios/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "helios/features.hpp"
#include "helios/io.hpp"
#include "helios/rng.hpp"

namespace helios {

using nlohmann::json;

const SeasonModel& ModelEnvelope::season(Season s) const {
    const auto it = seasons.find(s);
    if (it == seasons.end()) {
        throw Error("markov", "model has no fit for season " + std::string(season_name(s)));
    }
    return it->second;
}

std::vector<std::vector<int>> split_contiguous(std::span<const Date> dates, std::span<const int> codes) {
    std::vector<std::vector<int>> runs;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (i == 0 || dates[i] - dates[i - 1] != std::chrono::days{1}) runs.emplace_back();
        runs.back().push_back(codes[i]);
    }
    return runs;
}

ModelEnvelope fit_model(const Corpus& corpus, const FitOptions& options,
                        std::map<Season, SeasonFit>* details) {
    if (options.k == 0) throw Error("clustering", "k must be positive");
    const std::size_t j = corpus.station_count();

    ModelEnvelope env;
    env.stations = corpus.stations();
    env.k = options.k;
    env.metadata.seed = options.seed;
    env.metadata.aligned_days = corpus.alignment().size();
    env.metadata.first_date = format_date(corpus.alignment().front());
    env.metadata.last_date = format_date(corpus.alignment().back());
    env.metadata.max_gap_minutes = options.cleaning.max_gap_minutes;

    for (Season season : kSeasons) {
        SeasonFit fit;
        for (Date d : corpus.alignment()) {
            if (assign_season(d) == season) fit.dates.push_back(d);
        }
        if (fit.dates.size() < std::max<std::size_t>(options.k, 2)) {
            spdlog::warn("fit: season {} has {} aligned days, skipping", season_name(season),
                         fit.dates.size());
            continue;
        }

        SeasonModel sm;
        bool ok = true;
        for (std::size_t s = 0; s < j && ok; ++s) {
            std::vector<FeatureVector> features;
            features.reserve(fit.dates.size());
            for (Date d : fit.dates) features.push_back(extract(*corpus.find(s, d)));
            const std::uint64_t seed =
                mix_seed(options.seed, s * kSeasons.size() + static_cast<std::size_t>(season));
            try {
                ClusterFit cf = fit_cluster_model(corpus.stations()[s], season, features, options.k, seed);
                StateSequence seq{corpus.stations()[s], season, {}};
                for (std::size_t t = 0; t < fit.dates.size(); ++t) {
                    seq.entries.push_back({fit.dates[t], cf.labels[t]});
                }
                fit.states.push_back(std::move(seq));
                sm.cluster_models.push_back(std::move(cf.model));
            } catch (const Error& e) {
                spdlog::warn("fit: season {} skipped: {}", season_name(season), e.what());
                ok = false;
            }
        }
        if (!ok) continue;

        fit.joint = joint_sequence(fit.states, fit.dates);
        sm.state_space = reduce(fit.joint, options.k, j, season);
        const auto codes = encode_all(sm.state_space, fit.joint);
        fit.code_runs = split_contiguous(fit.dates, codes);
        sm.transitions = fit_mtpm(fit.code_runs, sm.state_space.r(), season);
        spdlog::info("fit: season {}: {} days, r = {} of {}", season_name(season), fit.dates.size(),
                     sm.state_space.r(), sm.state_space.full_size());
        env.seasons.emplace(season, std::move(sm));
        if (details) details->emplace(season, std::move(fit));
    }
    if (env.seasons.empty()) throw Error("markov", "no season has enough aligned days to fit");
    return env;
}

namespace {

json matrix_to_json(const PointMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

PointMatrix matrix_from_json(const json& rows, std::size_t expect_rows, std::size_t expect_cols,
                             const std::string& what) {
    if (!rows.is_array() || rows.size() != expect_rows) {
        throw Error("markov", what + " must have " + std::to_string(expect_rows) + " rows");
    }
    PointMatrix m(expect_rows, expect_cols);
    for (std::size_t i = 0; i < expect_rows; ++i) {
        const auto row = rows[i].get<std::vector<double>>();
        if (row.size() != expect_cols) {
            throw Error("markov", what + " row " + std::to_string(i + 1) + " must have " +
                                      std::to_string(expect_cols) + " entries");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw Error("markov", what + " has a non-finite entry");
        }
        std::ranges::copy(row, m.row(i).begin());
    }
    return m;
}

json cluster_to_json(const ClusterModel& m) {
    return {{"station_id", m.station_id},
            {"normalization", {{"mean", m.normalization.mean}, {"std", m.normalization.std}}},
            {"centroids", matrix_to_json(m.centroids)},
            {"suitability_order", m.label_of}};
}

ClusterModel cluster_from_json(const json& doc, Season season, std::size_t k) {
    ClusterModel m;
    m.station_id = doc.at("station_id").get<std::string>();
    m.season = season;
    m.k = k;
    m.normalization.mean = doc.at("normalization").at("mean").get<std::vector<double>>();
    m.normalization.std = doc.at("normalization").at("std").get<std::vector<double>>();
    if (m.normalization.mean.size() != kFeatureCount || m.normalization.std.size() != kFeatureCount) {
        throw Error("markov", "normalization for " + m.station_id + " must have 5 entries");
    }
    m.centroids = matrix_from_json(doc.at("centroids"), k, kFeatureCount, "centroids of " + m.station_id);
    m.label_of = doc.at("suitability_order").get<std::vector<int>>();
    std::vector<int> sorted = m.label_of;
    std::ranges::sort(sorted);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<int>(i + 1)) sorted.clear();
    }
    if (sorted.size() != k) {
        throw Error("markov", "suitability_order of " + m.station_id + " is not a permutation of 1..k");
    }
    return m;
}

void check_transitions(const TransitionModel& tm) {
    constexpr double kTol = 1e-12;
    validate_stochastic(tm.matrix);
    double fallback_sum = 0.0;
    for (double p : tm.fallback) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error("markov", "fallback entry outside [0,1]");
        fallback_sum += p;
    }
    if (std::fabs(fallback_sum - 1.0) > kRowSumTolerance) throw Error("markov", "fallback does not sum to 1");
    for (std::size_t i = 0; i < tm.r; ++i) {
        std::uint64_t total = 0;
        for (auto c : tm.counts[i]) total += c;
        for (std::size_t j = 0; j < tm.r; ++j) {
            const double expect = total == 0 ? tm.fallback[j]
                                             : static_cast<double>(tm.counts[i][j]) / static_cast<double>(total);
            if (std::fabs(expect - tm.matrix[i][j]) > kTol) {
                throw Error("markov", "matrix row " + std::to_string(i + 1) + " disagrees with counts");
            }
        }
    }
}

}  // namespace

json save(const ModelEnvelope& env) {
    json seasons = json::object();
    for (const auto& [season, sm] : env.seasons) {
        json clusters = json::array();
        for (const auto& cm : sm.cluster_models) clusters.push_back(cluster_to_json(cm));
        seasons[std::string(season_name(season))] = {
            {"cluster_models", clusters},
            {"state_space", sm.state_space.permutations()},
            {"counts", sm.transitions.counts},
            {"matrix", sm.transitions.matrix},
            {"fallback", sm.transitions.fallback},
        };
    }
    return {{"schema_version", env.schema_version},
            {"stations", env.stations},
            {"k", env.k},
            {"seasons", seasons},
            {"metadata",
             {{"first_date", env.metadata.first_date},
              {"last_date", env.metadata.last_date},
              {"seed", env.metadata.seed},
              {"aligned_days", env.metadata.aligned_days},
              {"max_gap_minutes", env.metadata.max_gap_minutes},
              {"season_rule", env.metadata.season_rule}}}};
}

ModelEnvelope load(const json& doc) {
    try {
        ModelEnvelope env;
        env.schema_version = doc.at("schema_version").get<int>();
        if (env.schema_version != kSchemaVersion) {
            throw Error("markov", "unsupported schema_version " + std::to_string(env.schema_version) +
                                      " (expected " + std::to_string(kSchemaVersion) + ")");
        }
        env.stations = doc.at("stations").get<std::vector<std::string>>();
        if (env.stations.empty()) throw Error("markov", "model lists no stations");
        if (std::set<std::string>(env.stations.begin(), env.stations.end()).size() != env.stations.size()) {
            throw Error("markov", "model lists a station twice");
        }
        env.k = doc.at("k").get<std::size_t>();
        if (env.k == 0) throw Error("markov", "k must be positive");
        const std::size_t j = env.stations.size();

        for (const auto& [name, sdoc] : doc.at("seasons").items()) {
            const auto season = parse_season(name);
            if (!season) throw Error("markov", "unknown season '" + name + "'");
            SeasonModel sm;
            const auto& clusters = sdoc.at("cluster_models");
            if (clusters.size() != j) {
                throw Error("markov", "season " + name + " has " + std::to_string(clusters.size()) +
                                          " cluster models for " + std::to_string(j) + " stations");
            }
            for (std::size_t s = 0; s < j; ++s) {
                sm.cluster_models.push_back(cluster_from_json(clusters[s], *season, env.k));
                if (sm.cluster_models.back().station_id != env.stations[s]) {
                    throw Error("markov", "season " + name + " station list does not match the model's stations");
                }
            }
            sm.state_space = ReducedStateSpace(*season, env.k, j,
                                               sdoc.at("state_space").get<std::vector<JointState>>());
            const std::size_t r = sm.state_space.r();
            if (r == 0) throw Error("markov", "season " + name + " has an empty state space");
            TransitionModel& tm = sm.transitions;
            tm.season = *season;
            tm.r = r;
            tm.counts = sdoc.at("counts").get<CountMatrix>();
            tm.matrix = sdoc.at("matrix").get<ProbabilityMatrix>();
            tm.fallback = sdoc.at("fallback").get<std::vector<double>>();
            if (tm.counts.size() != r || tm.matrix.size() != r || tm.fallback.size() != r) {
                throw Error("markov", "season " + name + " transition dimensions do not match r = " +
                                          std::to_string(r));
            }
            for (const auto& row : tm.counts) {
                if (row.size() != r) throw Error("markov", "season " + name + " counts are not r x r");
            }
            check_transitions(tm);
            env.seasons.emplace(*season, std::move(sm));
        }
        if (env.seasons.empty()) throw Error("markov", "model has no fitted seasons");

        const json& md = doc.at("metadata");
        env.metadata.first_date = md.at("first_date").get<std::string>();
        env.metadata.last_date = md.at("last_date").get<std::string>();
        env.metadata.seed = md.at("seed").get<std::uint64_t>();
        env.metadata.aligned_days = md.at("aligned_days").get<std::size_t>();
        env.metadata.max_gap_minutes = md.at("max_gap_minutes").get<int>();
        env.metadata.season_rule = md.at("season_rule").get<std::string>();
        return env;
    } catch (const json::exception& e) {
        throw Error("markov", std::string("malformed model document: ") + e.what());
    }
}

std::string dump_model(const ModelEnvelope& envelope) { return save(envelope).dump(1) + "\n"; }

void save_model_file(const ModelEnvelope& envelope, const std::filesystem::path& path) {
    write_file_atomic(path, dump_model(envelope));
}

ModelEnvelope load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("markov", "cannot open model " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error("markov", "model " + path.string() + " is not valid JSON: " + e.what());
    }
    return load(doc);
}

}  // namespace helios
