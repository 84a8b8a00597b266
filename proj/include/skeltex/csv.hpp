#pragma once

// Minimal comma-separated reader for the score and sample tables. Fields are
// trimmed; quoting is not supported (none of the tables need it).

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "skeltex/error.hpp"

namespace skeltex::csv {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based source line of each row, for diagnostics.
  std::vector<std::size_t> lines;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ContractError("missing CSV column '" + std::string(name) + "'");
  }
};

inline Table read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Table t;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto fields = split(line);
    if (fields.size() != t.header.size())
      throw ParseError(n, path.string() + ": expected " + std::to_string(t.header.size()) + " fields, found " +
                              std::to_string(fields.size()));
    t.rows.push_back(std::move(fields));
    t.lines.push_back(n);
  }
  if (t.header.empty()) throw ParseError(1, path.string() + ": missing header");
  return t;
}

}  // namespace skeltex::csv
