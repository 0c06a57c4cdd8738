#include "helios/cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "helios/features.hpp"
#include "helios/ingest.hpp"
#include "helios/io.hpp"
#include "helios/log.hpp"
#include "helios/model.hpp"
#include "helios/simulator.hpp"
#include "helios/validate.hpp"

namespace helios::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string input;
    std::string out;
    std::size_t k = 4;
    std::uint64_t seed = 0;
    std::string season_rule = "meteorological";
    int max_gap = CleaningPolicy{}.max_gap_minutes;

    std::string model;
    std::string corpus;
    std::optional<std::size_t> days;
    std::string from;
    std::string to;
    std::string start;
    std::string sidecar;

    std::string observed;
    std::string simulated;
    std::string out_dir;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_cleaning(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--max-gap", cfg.max_gap, "Longest gap (minutes) filled by interpolation")
        ->check(CLI::NonNegativeNumber);
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
    const Corpus corpus = load_corpus(cfg.input, {cfg.max_gap});
    save_corpus_json(corpus, cfg.out);
    out << "ingest: " << corpus.station_count() << " stations, " << corpus.alignment().size()
        << " aligned days -> " << cfg.out << '\n';
    return 0;
}

int cmd_features(const RunConfig& cfg, std::ostream& out) {
    const Corpus corpus = load_corpus(cfg.input, {cfg.max_gap});
    std::size_t rows = 0;
    write_file_atomic(cfg.out, [&](std::ostream& csv) {
        csv << "station_id,date,mean,std,skewness,kurtosis,mfi\n";
        for (std::size_t s = 0; s < corpus.station_count(); ++s) {
            for (const auto& [date, p] : corpus.days(s)) {
                const FeatureVector f = extract(p);
                csv << p.station_id << ',' << format_date(date) << ',' << format_number(f.mean) << ','
                    << format_number(f.std) << ',' << format_number(f.skewness) << ','
                    << format_number(f.kurtosis) << ',' << format_number(f.mfi) << '\n';
                ++rows;
            }
        }
    });
    out << "features: " << rows << " station-days -> " << cfg.out << '\n';
    return 0;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
    const Corpus corpus = load_corpus(cfg.input, {cfg.max_gap});
    FitOptions options;
    options.k = cfg.k;
    options.seed = cfg.seed;
    options.cleaning.max_gap_minutes = cfg.max_gap;
    const ModelEnvelope env = fit_model(corpus, options);
    save_model_file(env, cfg.out);
    out << "fit: " << env.seasons.size() << " seasons, " << corpus.alignment().size()
        << " aligned days -> " << cfg.out << '\n';
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const bool by_days = cfg.days.has_value();
    const bool by_range = !cfg.from.empty() || !cfg.to.empty();
    if (by_days == by_range) throw UsageError("simulate needs either --days N or --from and --to");
    if (by_range && (cfg.from.empty() || cfg.to.empty())) throw UsageError("--from and --to go together");

    const ModelEnvelope env = load_model_file(cfg.model);
    const Corpus corpus = load_corpus(cfg.corpus, {env.metadata.max_gap_minutes});

    SimulationConfig sc;
    if (by_range) {
        sc = SimulationConfig::for_range(parse_date(cfg.from), parse_date(cfg.to), cfg.seed);
    } else {
        if (*cfg.days == 0) throw UsageError("--days must be at least 1");
        sc.n_days = *cfg.days;
        sc.seed = cfg.seed;
        sc.calendar_start = cfg.start.empty() ? make_date(year_of(parse_date(env.metadata.last_date)) + 1, 1, 1)
                                              : parse_date(cfg.start);
    }
    const SimulatedSeries series = simulate_year(env, corpus, sc);
    const auto records = to_records(series);
    write_file_atomic(cfg.out, [&](std::ostream& csv) { write_csv(csv, records); });

    fs::path sidecar = cfg.sidecar;
    if (sidecar.empty()) {
        sidecar = cfg.out;
        sidecar.replace_extension(".days.json");
    }
    write_file_atomic(sidecar, sidecar_json(series));
    out << "simulate: " << series.days.size() << " days x " << series.stations.size() << " stations -> "
        << cfg.out << " (+ " << sidecar.string() << ")\n";
    return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const Corpus observed = load_corpus(cfg.observed, {cfg.max_gap});
    const Corpus simulated = load_corpus(cfg.simulated, {cfg.max_gap});
    const ValidationReport report = build_report(observed, simulated);
    write_report(report, cfg.out_dir);
    out << "validate: " << report.stations.size() << " stations -> " << cfg.out_dir << '\n';
    for (const auto& s : report.stations) out << "  " << s.station_id << " ks=" << s.ks << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    log::init_from_env();
    RunConfig cfg;
    CLI::App app{"Correlated multi-station solar irradiance simulator", "helios"};
    app.require_subcommand(1, 1);

    auto* ingest = app.add_subcommand("ingest", "Clean raw CSV into a station-day corpus dump");
    ingest->add_option("--input", cfg.input, "Raw CSV (timestamp,station_id,ghi_wm2)")->required()->check(CLI::ExistingFile);
    ingest->add_option("--out", cfg.out, "Corpus JSON output")->required();
    add_cleaning(ingest, cfg);

    auto* features = app.add_subcommand("features", "Emit per station-day features as CSV");
    features->add_option("--input", cfg.input, "Raw CSV or corpus JSON")->required()->check(CLI::ExistingFile);
    features->add_option("--out", cfg.out, "Feature CSV output")->required();
    add_cleaning(features, cfg);

    auto* fit = app.add_subcommand("fit", "Fit clusters, state spaces and transition matrices");
    fit->add_option("--input", cfg.input, "Raw CSV or corpus JSON")->required()->check(CLI::ExistingFile);
    fit->add_option("--out", cfg.out, "Model JSON output")->required();
    fit->add_option("--k", cfg.k, "Clusters per station and season")->check(CLI::PositiveNumber);
    fit->add_option("--seed", cfg.seed, "k-means seed");
    fit->add_option("--season-rule", cfg.season_rule, "Season partition")->check(CLI::IsMember({"meteorological"}));
    add_cleaning(fit, cfg);

    auto* simulate = app.add_subcommand("simulate", "Generate synthetic multi-station series");
    simulate->add_option("--model", cfg.model, "Model JSON from fit")->required()->check(CLI::ExistingFile);
    simulate->add_option("--corpus", cfg.corpus, "Observed raw CSV or corpus JSON")->required()->check(CLI::ExistingFile);
    simulate->add_option("--days", cfg.days, "Number of days to simulate");
    simulate->add_option("--start", cfg.start, "First simulated date with --days (default: Jan 1 after the fitted range)");
    simulate->add_option("--from", cfg.from, "First simulated date, YYYY-MM-DD");
    simulate->add_option("--to", cfg.to, "Last simulated date, YYYY-MM-DD");
    simulate->add_option("--seed", cfg.seed, "Simulation seed");
    simulate->add_option("--out", cfg.out, "Simulated CSV output")->required();
    simulate->add_option("--sidecar", cfg.sidecar, "Per-day provenance JSON (default: <out>.days.json)");

    auto* validate = app.add_subcommand("validate", "Compare simulated and observed statistics");
    validate->add_option("--observed", cfg.observed, "Observed raw CSV or corpus JSON")->required()->check(CLI::ExistingFile);
    validate->add_option("--simulated", cfg.simulated, "Simulated CSV")->required()->check(CLI::ExistingFile);
    validate->add_option("--out-dir", cfg.out_dir, "Directory for report.json and CSV tables")->required();
    add_cleaning(validate, cfg);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*ingest) return cmd_ingest(cfg, out);
        if (*features) return cmd_features(cfg, out);
        if (*fit) return cmd_fit(cfg, out);
        if (*simulate) return cmd_simulate(cfg, out);
        if (*validate) return cmd_validate(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace helios::cli
