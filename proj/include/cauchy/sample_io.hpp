#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace cauchy {

// One observation per line in decimal notation. Blank lines and lines whose
// first non-blank character is '#' are skipped. Any other non-numeric line
// throws DomainError naming the line number.
std::vector<double> parse_sample_csv(std::istream& in);
std::vector<double> read_sample_csv(const std::filesystem::path& path);

// Shortest round-trip decimal per line.
std::string format_sample_csv(const std::vector<double>& values);

// Writes through a temporary file in the target directory and renames it
// into place, so a failure never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace cauchy
