#pragma once

// Small helpers for the CSV files the library reads and writes.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tfbm::textio {

/// Shortest representation that parses back to the same double.
std::string fmt(double v);

double parse_double(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

std::string_view trim(std::string_view s);

/// `#`-prefixed lines (prefix and one following space stripped) and numeric rows.
struct CsvDocument {
  std::vector<std::string> comments;
  std::vector<std::vector<double>> rows;
};

/// Throws DomainError on a non-numeric data cell.
CsvDocument read_csv(std::istream& is);

}  // namespace tfbm::textio
