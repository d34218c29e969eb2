#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pinsync {

/// Shortest round-trip-exact decimal form ("%.17g").
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);

/// Write-temp-then-rename so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Minimal reader for the files this tool writes (no quoting, no escapes).
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace pinsync
