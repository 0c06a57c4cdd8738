#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace helios {

// The solar-day window kept from every station-day: minute-of-day [180, 1260).
inline constexpr int kWindowBegin = 180;
inline constexpr int kWindowEnd = 1260;
inline constexpr int kSamplesPerDay = kWindowEnd - kWindowBegin;
inline constexpr int kMinutesPerDay = 1440;

/// Domain error raised by any pipeline stage. `module()` names the stage
/// (ingest, features, clustering, ...) so the CLI can report where it failed.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

enum class Season : std::uint8_t { Spring = 0, Summer = 1, Autumn = 2, Winter = 3 };

inline constexpr std::array<Season, 4> kSeasons{Season::Spring, Season::Summer, Season::Autumn,
                                                Season::Winter};

std::string_view season_name(Season season);
std::optional<Season> parse_season(std::string_view name);

using Date = std::chrono::sys_days;

Date make_date(int year, unsigned month, unsigned day);

// YYYY-MM-DD; throws Error("date", ...) on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string format_date(Date date);

int year_of(Date date);
unsigned month_of(Date date);

}  // namespace helios
