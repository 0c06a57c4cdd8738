#include "helios/validate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helios/io.hpp"
#include "helios/kernels.hpp"

namespace helios {
namespace {

struct Accumulator {
    std::vector<double> values;

    MeanStd finish() const {
        MeanStd out;
        if (values.empty()) return out;
        const double n = static_cast<double>(values.size());
        out.mean = kernels::sum(values) / n;
        if (values.size() > 1) out.std = std::sqrt(kernels::central_sums(values, out.mean).m2 / (n - 1.0));
        return out;
    }
};

std::string safe_name(const std::string& station) {
    std::string out = station;
    for (char& c : out) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                        c == '-' || c == '_';
        if (!ok) c = '_';
    }
    return out;
}

nlohmann::json to_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

nlohmann::json to_json(const DailyStats& s) {
    nlohmann::json per_year = nlohmann::json::object();
    for (const auto& [year, m] : s.per_year) per_year[std::to_string(year)] = to_json(m);
    nlohmann::json per_year_samples = nlohmann::json::object();
    for (const auto& [year, m] : s.per_year_samples) per_year_samples[std::to_string(year)] = to_json(m);
    return {{"days", s.days},
            {"per_year", per_year},
            {"pooled", to_json(s.pooled)},
            {"per_year_samples", per_year_samples},
            {"pooled_samples", to_json(s.pooled_samples)}};
}

nlohmann::json to_json(const MonthlyCurve& c) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [month, mean] : c) out[std::to_string(month)] = mean;
    return out;
}

nlohmann::json to_json(const MonthlyCurves& c) {
    nlohmann::json per_year = nlohmann::json::object();
    for (const auto& [year, curve] : c.per_year) per_year[std::to_string(year)] = to_json(curve);
    return {{"per_year", per_year}, {"pooled", to_json(c.pooled)}};
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("validate", "pearson inputs differ in length");
    if (x.size() < 2) throw Error("validate", "pearson needs at least 2 samples");
    const double n = static_cast<double>(x.size());
    const double mx = kernels::sum(x) / n;
    const double my = kernels::sum(y) / n;
    const auto cs = kernels::cross_sums(x, y, mx, my);
    if (!(cs.sxx > 0.0) || !(cs.syy > 0.0)) throw Error("validate", "pearson is undefined for a constant input");
    return std::clamp(cs.sxy / std::sqrt(cs.sxx * cs.syy), -1.0, 1.0);
}

double station_pearson(const Corpus& corpus, std::size_t a, std::size_t b) {
    std::vector<double> x, y;
    for (const auto& [date, pa] : corpus.days(a)) {
        const DailyProfile* pb = corpus.find(b, date);
        if (!pb) continue;
        x.insert(x.end(), pa.samples.begin(), pa.samples.end());
        y.insert(y.end(), pb->samples.begin(), pb->samples.end());
    }
    return pearson(x, y);
}

DailyStats daily_stat_table(const std::map<Date, DailyProfile>& days) {
    if (days.empty()) throw Error("validate", "daily statistics need at least one day");
    std::map<int, Accumulator> daily_by_year, samples_by_year;
    Accumulator daily_all, samples_all;
    for (const auto& [date, p] : days) {
        const double m = kernels::sum(p.samples) / static_cast<double>(p.samples.size());
        const int year = year_of(date);
        daily_by_year[year].values.push_back(m);
        daily_all.values.push_back(m);
        auto& sy = samples_by_year[year].values;
        sy.insert(sy.end(), p.samples.begin(), p.samples.end());
        samples_all.values.insert(samples_all.values.end(), p.samples.begin(), p.samples.end());
    }
    DailyStats out;
    out.days = days.size();
    for (const auto& [year, acc] : daily_by_year) out.per_year[year] = acc.finish();
    for (const auto& [year, acc] : samples_by_year) out.per_year_samples[year] = acc.finish();
    out.pooled = daily_all.finish();
    out.pooled_samples = samples_all.finish();
    return out;
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    if (it == values.begin()) return 0.0;
    return cumulative[static_cast<std::size_t>(it - values.begin()) - 1];
}

EmpiricalCdf empirical_cdf(std::span<const double> samples) {
    if (samples.empty()) throw Error("validate", "empirical CDF needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    EmpiricalCdf cdf;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        cdf.values.push_back(sorted[i]);
        cdf.cumulative.push_back(static_cast<double>(i + 1) / n);
    }
    return cdf;
}

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
    double sup = 0.0;
    std::size_t i = 0, j = 0;
    double fa = 0.0, fb = 0.0;
    while (i < a.values.size() || j < b.values.size()) {
        double x;
        if (j >= b.values.size() || (i < a.values.size() && a.values[i] <= b.values[j])) {
            x = a.values[i];
        } else {
            x = b.values[j];
        }
        while (i < a.values.size() && a.values[i] <= x) fa = a.cumulative[i++];
        while (j < b.values.size() && b.values[j] <= x) fb = b.cumulative[j++];
        sup = std::max(sup, std::fabs(fa - fb));
    }
    return sup;
}

MonthlyCurves monthly_curves(const std::map<Date, DailyProfile>& days) {
    struct Sum {
        double total = 0.0;
        std::size_t count = 0;
    };
    std::map<int, std::map<unsigned, Sum>> by_year;
    std::map<unsigned, Sum> pooled;
    for (const auto& [date, p] : days) {
        const double s = kernels::sum(p.samples);
        const unsigned month = month_of(date);
        auto& y = by_year[year_of(date)][month];
        y.total += s;
        y.count += p.samples.size();
        pooled[month].total += s;
        pooled[month].count += p.samples.size();
    }
    MonthlyCurves out;
    for (const auto& [year, months] : by_year) {
        for (const auto& [month, sum] : months) {
            out.per_year[year][month] = sum.total / static_cast<double>(sum.count);
        }
    }
    for (const auto& [month, sum] : pooled) out.pooled[month] = sum.total / static_cast<double>(sum.count);
    return out;
}

ValidationReport build_report(const Corpus& observed, const Corpus& simulated) {
    if (observed.stations() != simulated.stations()) {
        throw Error("validate", "observed and simulated data list different stations");
    }
    ValidationReport report;
    const std::size_t j = observed.station_count();
    for (std::size_t a = 0; a < j; ++a) {
        for (std::size_t b = a + 1; b < j; ++b) {
            StationPair pair{observed.stations()[a], observed.stations()[b],
                             station_pearson(observed, a, b), std::nullopt};
            if (!simulated.days(a).empty()) pair.simulated = station_pearson(simulated, a, b);
            report.pearson.push_back(std::move(pair));
        }
    }
    for (std::size_t s = 0; s < j; ++s) {
        StationReport sr;
        sr.station_id = observed.stations()[s];
        sr.observed = daily_stat_table(observed.days(s));
        sr.simulated = daily_stat_table(simulated.days(s));
        std::vector<double> obs, sim;
        for (const auto& [d, p] : observed.days(s)) obs.insert(obs.end(), p.samples.begin(), p.samples.end());
        for (const auto& [d, p] : simulated.days(s)) sim.insert(sim.end(), p.samples.begin(), p.samples.end());
        sr.observed_cdf = empirical_cdf(obs);
        sr.simulated_cdf = empirical_cdf(sim);
        sr.ks = ks_distance(sr.observed_cdf, sr.simulated_cdf);
        sr.observed_monthly = monthly_curves(observed.days(s));
        sr.simulated_monthly = monthly_curves(simulated.days(s));
        report.stations.push_back(std::move(sr));
    }
    return report;
}

std::string report_json(const ValidationReport& report) {
    nlohmann::json pearson_doc = nlohmann::json::array();
    for (const auto& p : report.pearson) {
        nlohmann::json entry{{"a", p.a}, {"b", p.b}, {"observed", p.observed}};
        entry["simulated"] = p.simulated ? nlohmann::json(*p.simulated) : nlohmann::json(nullptr);
        pearson_doc.push_back(std::move(entry));
    }
    nlohmann::json stations = nlohmann::json::array();
    for (const auto& s : report.stations) {
        stations.push_back({{"station_id", s.station_id},
                            {"daily_stats", {{"observed", to_json(s.observed)}, {"simulated", to_json(s.simulated)}}},
                            {"ks", s.ks},
                            {"cdf_csv", "cdf_" + safe_name(s.station_id) + ".csv"},
                            {"monthly",
                             {{"observed", to_json(s.observed_monthly)},
                              {"simulated", to_json(s.simulated_monthly.pooled)}}},
                            {"monthly_csv", "monthly_" + safe_name(s.station_id) + ".csv"}});
    }
    return nlohmann::json{{"pearson", pearson_doc}, {"stations", stations}}.dump(1) + "\n";
}

void write_report(const ValidationReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "report.json", report_json(report));
    for (const auto& s : report.stations) {
        write_file_atomic(dir / ("cdf_" + safe_name(s.station_id) + ".csv"), [&](std::ostream& out) {
            out << "ghi_wm2,observed_cdf,simulated_cdf\n";
            std::size_t i = 0, j = 0;
            const auto& a = s.observed_cdf;
            const auto& b = s.simulated_cdf;
            double fa = 0.0, fb = 0.0;
            while (i < a.values.size() || j < b.values.size()) {
                const double x = (j >= b.values.size() || (i < a.values.size() && a.values[i] <= b.values[j]))
                                     ? a.values[i]
                                     : b.values[j];
                while (i < a.values.size() && a.values[i] <= x) fa = a.cumulative[i++];
                while (j < b.values.size() && b.values[j] <= x) fb = b.cumulative[j++];
                out << format_number(x) << ',' << format_number(fa) << ',' << format_number(fb) << '\n';
            }
        });
        write_file_atomic(dir / ("monthly_" + safe_name(s.station_id) + ".csv"), [&](std::ostream& out) {
            out << "series,month,mean_wm2\n";
            for (const auto& [year, curve] : s.observed_monthly.per_year) {
                for (const auto& [month, mean] : curve) {
                    out << "observed_" << year << ',' << month << ',' << format_number(mean) << '\n';
                }
            }
            for (const auto& [month, mean] : s.simulated_monthly.pooled) {
                out << "simulated," << month << ',' << format_number(mean) << '\n';
            }
        });
    }
}

}  // namespace helios
