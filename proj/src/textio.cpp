#include "tfbm/textio.hpp"

#include <array>
#include <charconv>
#include <istream>

#include "tfbm/error.hpp"

namespace tfbm::textio {

std::string fmt(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

CsvDocument read_csv(std::istream& is) {
  CsvDocument doc;
  std::string line;
  while (std::getline(is, line)) {
    std::string_view v = trim(line);
    if (v.empty()) continue;
    if (v.front() == '#') {
      v.remove_prefix(1);
      if (!v.empty() && v.front() == ' ') v.remove_prefix(1);
      doc.comments.emplace_back(v);
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(v, ',')) row.push_back(parse_double(cell));
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

}  // namespace tfbm::textio
