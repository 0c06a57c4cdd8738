#include "helios/log.hpp"

#include <cstdlib>
#include <string>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>

namespace helios::log {

void init_from_env() {
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("HELIOS_LOG")) {
        // from_str maps unknown names to off; keep the default for those.
        const std::string_view v{env};
        const auto parsed = spdlog::level::from_str(std::string(v));
        if (parsed != spdlog::level::off || v == "off") level = parsed;
    }
    auto logger = spdlog::get("helios");
    if (!logger) {
        logger = spdlog::stderr_logger_st("helios");
        logger->set_pattern("[%l] %v");
    }
    logger->set_level(level);
    spdlog::set_default_logger(logger);
}

}  // namespace helios::log
