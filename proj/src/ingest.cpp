#include "helios/ingest.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>
#include "helios/io.hpp"
#include <spdlog/spdlog.h>

namespace helios {
namespace {

constexpr std::string_view kHeader = "timestamp,station_id,ghi_wm2";

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
    throw Error("ingest", "line " + std::to_string(line) + ": " + what);
}

bool parse_two_digits(std::string_view s, int& out) {
    if (s.size() != 2 || s[0] < '0' || s[0] > '9' || s[1] < '0' || s[1] > '9') return false;
    out = (s[0] - '0') * 10 + (s[1] - '0');
    return true;
}

void parse_timestamp(std::string_view text, std::size_t line, RawRecord& rec) {
    if (text.size() != 16 || text[10] != 'T' || text[13] != ':') {
        fail_line(line, "unparseable timestamp '" + std::string(text) + "' (expected YYYY-MM-DDTHH:MM)");
    }
    int hh = 0, mm = 0;
    try {
        rec.date = parse_date(text.substr(0, 10));
    } catch (const Error&) {
        fail_line(line, "unparseable timestamp '" + std::string(text) + "'");
    }
    if (!parse_two_digits(text.substr(11, 2), hh) || !parse_two_digits(text.substr(14, 2), mm) ||
        hh > 23 || mm > 59) {
        fail_line(line, "unparseable timestamp '" + std::string(text) + "'");
    }
    rec.minute_of_day = hh * 60 + mm;
}

double parse_ghi(std::string_view text, std::size_t line) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        fail_line(line, "non-numeric ghi '" + std::string(text) + "'");
    }
    return value;
}

struct DayGrid {
    std::array<double, kMinutesPerDay> value{};
    std::array<bool, kMinutesPerDay> present{};
};

double clamp_nonnegative(double v) { return v <= 0.0 ? 0.0 : v; }

// Fills window gaps in place; returns false when the day must be dropped.
bool fill_window(const DayGrid& grid, int max_gap, std::vector<double>& out) {
    out.assign(kSamplesPerDay, 0.0);
    int minute = kWindowBegin;
    while (minute < kWindowEnd) {
        if (grid.present[minute]) {
            out[minute - kWindowBegin] = clamp_nonnegative(grid.value[minute]);
            ++minute;
            continue;
        }
        const int gap_begin = minute;
        while (minute < kWindowEnd && !grid.present[minute]) ++minute;
        const int gap_end = minute;  // exclusive
        if (gap_end - gap_begin > max_gap) return false;

        int left = gap_begin - 1;
        while (left >= 0 && !grid.present[left]) --left;
        int right = gap_end;
        while (right < kMinutesPerDay && !grid.present[right]) ++right;
        const bool has_left = left >= 0;
        const bool has_right = right < kMinutesPerDay;
        if (!has_left && !has_right) return false;

        for (int m = gap_begin; m < gap_end; ++m) {
            double v = 0.0;
            if (has_left && has_right) {
                const double a = clamp_nonnegative(grid.value[left]);
                const double b = clamp_nonnegative(grid.value[right]);
                const double t = static_cast<double>(m - left) / static_cast<double>(right - left);
                v = a + (b - a) * t;
            } else {
                v = clamp_nonnegative(grid.value[has_left ? left : right]);
            }
            out[m - kWindowBegin] = v;
        }
    }
    return true;
}

void check_profile(const DailyProfile& p) {
    if (p.samples.size() != static_cast<std::size_t>(kSamplesPerDay)) {
        throw Error("ingest", "profile " + p.station_id + " " + format_date(p.date) + " has " +
                                  std::to_string(p.samples.size()) + " samples, expected " +
                                  std::to_string(kSamplesPerDay));
    }
    for (double v : p.samples) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error("ingest", "profile " + p.station_id + " " + format_date(p.date) +
                                      " has a negative or non-finite sample");
        }
    }
    if (p.season != assign_season(p.date)) {
        throw Error("ingest", "profile " + p.station_id + " " + format_date(p.date) +
                                  " carries the wrong season");
    }
}

}  // namespace

Corpus::Corpus(std::vector<std::string> stations, std::vector<DailyProfile> profiles)
    : stations_(std::move(stations)), days_(stations_.size()) {
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (stations_[i] == stations_[j]) throw Error("ingest", "duplicate station " + stations_[i]);
        }
    }
    for (auto& p : profiles) {
        check_profile(p);
        const std::size_t s = station_index(p.station_id);
        const Date date = p.date;
        if (!days_[s].emplace(date, std::move(p)).second) {
            throw Error("ingest", "duplicate profile for " + stations_[s] + " " + format_date(date));
        }
    }
    if (!stations_.empty()) {
        for (const auto& [date, profile] : days_.front()) {
            bool everywhere = true;
            for (std::size_t s = 1; s < days_.size() && everywhere; ++s) {
                everywhere = days_[s].contains(date);
            }
            if (everywhere) alignment_.push_back(date);
        }
    }
}

std::size_t Corpus::station_index(const std::string& station_id) const {
    const auto it = std::find(stations_.begin(), stations_.end(), station_id);
    if (it == stations_.end()) throw Error("ingest", "unknown station '" + station_id + "'");
    return static_cast<std::size_t>(it - stations_.begin());
}

const DailyProfile* Corpus::find(std::size_t station, Date date) const {
    const auto& m = days_.at(station);
    const auto it = m.find(date);
    return it == m.end() ? nullptr : &it->second;
}

std::vector<RawRecord> parse_csv(std::istream& in) {
    std::vector<RawRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            std::string_view h{line};
            if (h.starts_with("\xEF\xBB\xBF")) h.remove_prefix(3);
            if (h != kHeader) fail_line(line_no, "expected header '" + std::string(kHeader) + "'");
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        const std::string_view row{line};
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
            fail_line(line_no, "malformed row, expected 3 fields");
        }
        RawRecord rec;
        parse_timestamp(row.substr(0, c1), line_no, rec);
        rec.station_id = std::string(row.substr(c1 + 1, c2 - c1 - 1));
        if (rec.station_id.empty()) fail_line(line_no, "empty station_id");
        rec.ghi = parse_ghi(row.substr(c2 + 1), line_no);
        out.push_back(std::move(rec));
    }
    if (!header_seen) throw Error("ingest", "empty input, missing header");
    return out;
}

std::vector<RawRecord> read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("ingest", "cannot open " + path.string());
    return parse_csv(in);
}

Corpus build_days(std::span<const RawRecord> records, const CleaningPolicy& policy) {
    if (policy.max_gap_minutes < 0) throw Error("ingest", "max_gap_minutes must be >= 0");

    std::vector<std::string> stations;
    std::unordered_map<std::string, std::size_t> station_of;
    std::vector<std::map<Date, DayGrid>> grids;

    for (const auto& rec : records) {
        if (rec.minute_of_day < 0 || rec.minute_of_day >= kMinutesPerDay) {
            throw Error("ingest", "minute_of_day out of range for " + rec.station_id);
        }
        auto [it, inserted] = station_of.try_emplace(rec.station_id, stations.size());
        if (inserted) {
            stations.push_back(rec.station_id);
            grids.emplace_back();
        }
        DayGrid& grid = grids[it->second][rec.date];
        const auto m = static_cast<std::size_t>(rec.minute_of_day);
        if (grid.present[m]) {
            if (grid.value[m] != rec.ghi) {
                throw Error("ingest", "conflicting duplicate readings for " + rec.station_id + " at " +
                                          format_date(rec.date) + " minute " +
                                          std::to_string(rec.minute_of_day));
            }
            continue;
        }
        grid.present[m] = true;
        grid.value[m] = rec.ghi;
    }

    std::vector<DailyProfile> profiles;
    std::size_t dropped = 0;
    for (std::size_t s = 0; s < stations.size(); ++s) {
        for (const auto& [date, grid] : grids[s]) {
            DailyProfile p{stations[s], date, assign_season(date), {}};
            if (!fill_window(grid, policy.max_gap_minutes, p.samples)) {
                ++dropped;
                continue;
            }
            profiles.push_back(std::move(p));
        }
    }
    if (dropped > 0) spdlog::info("ingest: dropped {} station-days exceeding the gap budget", dropped);

    Corpus corpus(std::move(stations), std::move(profiles));
    if (corpus.alignment().empty()) {
        throw Error("ingest", "no dates survive cleaning for every station (zero aligned days)");
    }
    return corpus;
}

Season assign_season(Date date) {
    switch (month_of(date)) {
        case 3: case 4: case 5: return Season::Spring;
        case 6: case 7: case 8: return Season::Summer;
        case 9: case 10: case 11: return Season::Autumn;
        default: return Season::Winter;
    }
}

std::vector<RawRecord> to_records(const Corpus& corpus) {
    std::vector<RawRecord> out;
    for (std::size_t s = 0; s < corpus.station_count(); ++s) {
        for (const auto& [date, profile] : corpus.days(s)) {
            for (int i = 0; i < kSamplesPerDay; ++i) {
                out.push_back({date, kWindowBegin + i, profile.station_id,
                               profile.samples[static_cast<std::size_t>(i)]});
            }
        }
    }
    return out;
}

std::string format_number(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, std::span<const RawRecord> records) {
    out << kHeader << '\n';
    std::string ts;
    for (const auto& r : records) {
        ts = format_date(r.date);
        char hm[16];
        std::snprintf(hm, sizeof hm, "T%02d:%02d", r.minute_of_day / 60, r.minute_of_day % 60);
        out << ts << hm << ',' << r.station_id << ',' << format_number(r.ghi) << '\n';
    }
}

void save_corpus_json(const Corpus& corpus, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["format"] = "helios-corpus";
    doc["stations"] = corpus.stations();
    auto& days = doc["days"] = nlohmann::json::array();
    for (std::size_t s = 0; s < corpus.station_count(); ++s) {
        for (const auto& [date, p] : corpus.days(s)) {
            days.push_back({{"station_id", p.station_id},
                            {"date", format_date(date)},
                            {"samples", p.samples}});
        }
    }
    std::vector<std::string> alignment;
    for (Date d : corpus.alignment()) alignment.push_back(format_date(d));
    doc["alignment"] = alignment;
    write_file_atomic(path, doc.dump() + "\n");
}

Corpus load_corpus_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("ingest", "cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        if (doc.at("format") != "helios-corpus") throw Error("ingest", "not a corpus dump: " + path.string());
        std::vector<DailyProfile> profiles;
        for (const auto& d : doc.at("days")) {
            const Date date = parse_date(d.at("date").get<std::string>());
            profiles.push_back({d.at("station_id").get<std::string>(), date, assign_season(date),
                                d.at("samples").get<std::vector<double>>()});
        }
        Corpus corpus(doc.at("stations").get<std::vector<std::string>>(), std::move(profiles));
        if (corpus.alignment().empty()) throw Error("ingest", "corpus dump has zero aligned days");
        return corpus;
    } catch (const nlohmann::json::exception& e) {
        throw Error("ingest", "malformed corpus dump " + path.string() + ": " + e.what());
    }
}

Corpus load_corpus(const std::filesystem::path& path, const CleaningPolicy& policy) {
    if (path.extension() == ".json") return load_corpus_json(path);
    const auto records = read_csv_file(path);
    return build_days(records, policy);
}

}  // namespace helios
