// SPDX-License-Identifier: Apache-2.0
//
// Small helpers shared by the structured-text readers and writers:
// line reading (LF/CRLF, UTF-8 BOM), CSV field splitting, strict number
// parsing with line context, shortest round-trip number formatting and
// flat `key=value` documents.
#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plcgrid::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char sep = ',');

double parse_double(std::string_view field, std::size_t line,
                    std::string_view what);
long long parse_int(std::string_view field, std::size_t line,
                    std::string_view what);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Line reader that strips CR, a leading UTF-8 BOM and counts lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(std::string& line);
  std::size_t line_number() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

/// A flat `key=value` document. Blank lines and `#` comments are skipped.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in);

  bool contains(const std::string& key) const;
  std::vector<std::string> keys() const;

  const std::string& require(const std::string& key) const;
  double require_double(const std::string& key) const;
  long long require_int(const std::string& key) const;

  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;

  void set(const std::string& key, std::string value, std::size_t line = 0);

 private:
  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace plcgrid::text
