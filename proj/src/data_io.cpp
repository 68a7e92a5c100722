#include "trimodal/data_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trimodal/error.h"

namespace trimodal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  const char sep = line.find(',') != std::string::npos ? ',' : (line.find(';') != std::string::npos ? ';' : 0);
  if (sep) {
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.emplace_back(trim(cell));
    if (!line.empty() && line.back() == sep) out.emplace_back();
  } else {
    std::istringstream is(line);
    std::string cell;
    while (is >> cell) out.emplace_back(trim(cell));
  }
  return out;
}

} // namespace

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<double> read_numeric_column(std::istream& in, const std::optional<std::string>& column) {
  std::string line;
  long lineno = 0;
  bool first = true;
  long col = -1;
  std::vector<double> out;
  std::vector<long> bad;
  std::optional<long> col_index;
  if (column) {
    if (auto v = parse_double(*column); v && *v >= 0 && *v == static_cast<long>(*v)) col_index = static_cast<long>(*v);
  }
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split(line);
    if (first) {
      first = false;
      bool numeric = true;
      for (const auto& c : cells) numeric = numeric && parse_double(c).has_value();
      if (!numeric) {
        // header row
        if (column && !col_index) {
          for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i] == *column) col = static_cast<long>(i);
          if (col < 0) throw DomainError("column '" + *column + "' not found in header");
        } else if (col_index) {
          col = *col_index;
        } else if (cells.size() == 1) {
          col = 0;
        } else {
          throw DomainError("input has " + std::to_string(cells.size()) + " columns; choose one with --column");
        }
        continue;
      }
      if (column && !col_index) throw DomainError("column '" + *column + "' given but input has no header");
      if (col_index) col = *col_index;
      else if (cells.size() == 1) col = 0;
      else throw DomainError("input has " + std::to_string(cells.size()) + " columns; choose one with --column");
    }
    if (static_cast<size_t>(col) >= cells.size()) {
      bad.push_back(lineno);
      continue;
    }
    const auto v = parse_double(cells[col]);
    if (!v || !std::isfinite(*v)) bad.push_back(lineno);
    else out.push_back(*v);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << bad.size() << " non-numeric row(s) at line(s) ";
    for (size_t i = 0; i < bad.size() && i < 10; ++i) msg << (i ? ", " : "") << bad[i];
    if (bad.size() > 10) msg << ", ...";
    throw DomainError(msg.str());
  }
  if (out.empty()) throw DomainError("input contains no numeric values");
  return out;
}

std::vector<double> read_numeric_file(const std::string& path, const std::optional<std::string>& column) {
  if (path == "-") return read_numeric_column(std::cin, column);
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open input file '" + path + "'");
  return read_numeric_column(f, column);
}

} // namespace trimodal
