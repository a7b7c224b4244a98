// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/text.hpp"

#include <charconv>
#include <cmath>

#include "plcgrid/errors.hpp"

namespace plcgrid::text {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::size_t line,
                    std::string_view what) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, "invalid number for " + std::string(what) + ": '" +
                               std::string(field) + "'");
  }
  return value;
}

long long parse_int(std::string_view field, std::size_t line,
                    std::string_view what) {
  field = trim(field);
  long long value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(line, "invalid integer for " + std::string(what) + ": '" +
                               std::string(field) + "'");
  }
  return value;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

bool LineReader::next(std::string& line) {
  if (!std::getline(in_, line)) return false;
  ++line_no_;
  if (line_no_ == 1 && line.size() >= 3 &&
      line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

KeyValues KeyValues::parse(std::istream& in) {
  KeyValues kv;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(reader.line_number(), "expected key=value");
    }
    const std::string key(trim(body.substr(0, eq)));
    if (key.empty()) throw ParseError(reader.line_number(), "empty key");
    if (kv.contains(key)) {
      throw ParseError(reader.line_number(), "duplicate key '" + key + "'");
    }
    kv.set(key, std::string(trim(body.substr(eq + 1))), reader.line_number());
  }
  return kv;
}

bool KeyValues::contains(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::vector<std::string> KeyValues::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

const std::string& KeyValues::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ParseError(0, "missing key '" + key + "'");
  return it->second.value;
}

double KeyValues::require_double(const std::string& key) const {
  const auto& e = entries_.find(key);
  if (e == entries_.end()) throw ParseError(0, "missing key '" + key + "'");
  return parse_double(e->second.value, e->second.line, key);
}

long long KeyValues::require_int(const std::string& key) const {
  const auto& e = entries_.find(key);
  if (e == entries_.end()) throw ParseError(0, "missing key '" + key + "'");
  return parse_int(e->second.value, e->second.line, key);
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  return contains(key) ? require_double(key) : fallback;
}

long long KeyValues::get_int(const std::string& key, long long fallback) const {
  return contains(key) ? require_int(key) : fallback;
}

void KeyValues::set(const std::string& key, std::string value,
                    std::size_t line) {
  entries_[key] = Entry{std::move(value), line};
}

}  // namespace plcgrid::text
