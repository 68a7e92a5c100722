#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace trimodal {

// Reads one numeric column from CSV or whitespace-separated text. `column` is a
// header name or a 0-based index; a header row is detected when the first
// non-blank line is not numeric. Blank lines and lines starting with '#' are
// skipped. Non-numeric cells raise DomainError listing their line numbers.
std::vector<double> read_numeric_column(std::istream& in, const std::optional<std::string>& column = std::nullopt);
std::vector<double> read_numeric_file(const std::string& path, const std::optional<std::string>& column = std::nullopt);

// Locale-independent parse of a whole field.
std::optional<double> parse_double(std::string_view s);

} // namespace trimodal
