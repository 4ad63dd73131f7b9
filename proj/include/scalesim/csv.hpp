#pragma once

#include <string>
#include <vector>

namespace scalesim {

/// Formats a double so that parsing the text recovers the exact value.
std::string format_double(double v);

/// Splits one CSV line on commas. No quoting support; the formats used
/// here never emit quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads all non-empty lines of a text file. Throws std::runtime_error
/// if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

/// Writes a whole file at once. Throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& content);

double parse_double(const std::string& s);
long parse_long(const std::string& s);

}  // namespace scalesim
