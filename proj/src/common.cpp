#include "helios/common.hpp"

#include <charconv>
#include <cstdio>

namespace helios {

std::string_view season_name(Season season) {
    switch (season) {
        case Season::Spring: return "spring";
        case Season::Summer: return "summer";
        case Season::Autumn: return "autumn";
        case Season::Winter: return "winter";
    }
    return "unknown";
}

std::optional<Season> parse_season(std::string_view name) {
    for (Season s : kSeasons) {
        if (season_name(s) == name) return s;
    }
    return std::nullopt;
}

Date make_date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw Error("date", "invalid calendar date " + std::to_string(year) + "-" +
                                std::to_string(month) + "-" + std::to_string(day));
    }
    return Date{ymd};
}

namespace {

bool parse_fixed(std::string_view text, int& out) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Date parse_date(std::string_view text) {
    int y = 0, m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_fixed(text.substr(0, 4), y) ||
        !parse_fixed(text.substr(5, 2), m) || !parse_fixed(text.substr(8, 2), d)) {
        throw Error("date", "expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    return make_date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string format_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int year_of(Date date) { return static_cast<int>(std::chrono::year_month_day{date}.year()); }

unsigned month_of(Date date) {
    return static_cast<unsigned>(std::chrono::year_month_day{date}.month());
}

}  // namespace helios
