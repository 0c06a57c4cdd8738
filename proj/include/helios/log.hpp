#pragma once

#include <spdlog/spdlog.h>

namespace helios::log {

// Configures the stderr logger from HELIOS_LOG (error|warn|info|debug).
// Defaults to warn. Safe to call repeatedly.
void init_from_env();

}  // namespace helios::log
