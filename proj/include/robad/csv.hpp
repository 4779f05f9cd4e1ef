#pragma once

#include "robad/common.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace robad {

/// Splits one comma-separated line into trimmed fields. None of the intrusion
/// datasets quote fields, so a plain scan is sufficient.
inline void split_csv_line(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string_view field = (comma == std::string_view::npos)
                                 ? line.substr(start)
                                 : line.substr(start, comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() &&
           (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
      field.remove_suffix(1);
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
}

/// Parses a numeric field. Accepts the textual Infinity/NaN spellings found in
/// CIC-IDS2018 exports; reports success separately so callers can count drops.
inline bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc() && ptr == s.data() + s.size()) return true;
  // from_chars handles "inf"/"nan" but not the capitalized CSV spellings
  if (s == "Infinity" || s == "inf" || s == "INF") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (s == "-Infinity") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  if (s == "NaN" || s == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  return false;
}

/// Streams a text file line by line (handles trailing \r, skips blank lines).
inline void for_each_line(const std::string& path,
                          const std::function<void(std::string_view)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line);
  }
}

}  // namespace robad
