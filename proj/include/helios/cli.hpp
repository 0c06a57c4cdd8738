#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helios::cli {

// Runs one subcommand (ingest, features, fit, simulate, validate). `args`
// includes the program name. Returns 0 on success, 1 on a domain error and
// 2 on a usage error; `--help` prints to `out` and returns 0.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helios::cli
