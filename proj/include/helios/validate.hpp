#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "helios/ingest.hpp"

namespace helios {

// Sample Pearson coefficient. Needs equal lengths >= 2 and non-constant inputs.
double pearson(std::span<const double> x, std::span<const double> y);

// Minute-level correlation of two corpus stations over their shared dates.
double station_pearson(const Corpus& corpus, std::size_t a, std::size_t b);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
    bool operator==(const MeanStd&) const = default;
};

/// Daily statistics of one station.
struct DailyStats {
    std::map<int, MeanStd> per_year;       // over each calendar year's daily means
    MeanStd pooled;                        // over all daily means
    std::map<int, MeanStd> per_year_samples;  // over each year's raw in-window samples
    MeanStd pooled_samples;                // over all raw in-window samples
    std::size_t days = 0;
};

// Mean and sample std of a station's daily-mean series, per year and pooled.
// A group with one day reports std 0. The *_samples fields are the same
// statistics over the raw minute samples.
DailyStats daily_stat_table(const std::map<Date, DailyProfile>& days);

/// Right-continuous empirical CDF evaluated at its distinct sorted values.
struct EmpiricalCdf {
    std::vector<double> values;
    std::vector<double> cumulative;

    double operator()(double x) const;  // P(X <= x)
};

EmpiricalCdf empirical_cdf(std::span<const double> samples);
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// Per-month mean irradiance; months without data are absent.
using MonthlyCurve = std::map<unsigned, double>;

struct MonthlyCurves {
    std::map<int, MonthlyCurve> per_year;
    MonthlyCurve pooled;
};

MonthlyCurves monthly_curves(const std::map<Date, DailyProfile>& days);

struct StationPair {
    std::string a;
    std::string b;
    double observed = 0.0;
    std::optional<double> simulated;
};

struct StationReport {
    std::string station_id;
    DailyStats observed;
    DailyStats simulated;
    EmpiricalCdf observed_cdf;
    EmpiricalCdf simulated_cdf;
    double ks = 0.0;
    MonthlyCurves observed_monthly;
    MonthlyCurves simulated_monthly;
};

struct ValidationReport {
    std::vector<StationPair> pearson;
    std::vector<StationReport> stations;
};

// Simulated corpus must carry the same stations as the observed one.
ValidationReport build_report(const Corpus& observed, const Corpus& simulated);

std::string report_json(const ValidationReport& report);

// Writes report.json, cdf_<station>.csv and monthly_<station>.csv into `dir`.
void write_report(const ValidationReport& report, const std::filesystem::path& dir);

}  // namespace helios
