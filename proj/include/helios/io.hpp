#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string_view>

namespace helios {

// Writes through a sibling temporary file and renames it over `path`, so an
// existing file is either left untouched or fully replaced.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace helios
