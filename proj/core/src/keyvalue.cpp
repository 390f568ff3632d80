#include "pedeval/keyvalue.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string_view>

#include "pedeval/error.hpp"

namespace pedeval {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string ctx(const std::string& key, int line) { return key + " (line " + std::to_string(line) + ")"; }

}  // namespace

KeyValues KeyValues::parse(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(n);
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::kParse, "unterminated section header", where);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw Error(ErrorCode::kParse, "empty section name", where);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::kParse, "expected key = value", where);
    const auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::kParse, "empty key", where);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (kv.entries_.contains(full)) throw Error(ErrorCode::kParse, "duplicate key " + full, where);
    kv.entries_[full] = {std::string(value), n};
  }
  return kv;
}

std::optional<KeyValues::Entry> KeyValues::take(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  Entry e = std::move(it->second);
  entries_.erase(it);
  return e;
}

std::optional<std::string> KeyValues::take_string(const std::string& key) {
  auto e = take(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<double> KeyValues::take_double(const std::string& key) {
  auto e = take(key);
  if (!e) return std::nullopt;
  double v = 0.0;
  const auto& s = e->value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw Error(ErrorCode::kValidation, "expected a finite number", ctx(key, e->line));
  return v;
}

std::optional<std::int64_t> KeyValues::take_int(const std::string& key) {
  auto e = take(key);
  if (!e) return std::nullopt;
  std::int64_t v = 0;
  const auto& s = e->value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kValidation, "expected an integer", ctx(key, e->line));
  return v;
}

std::optional<std::uint64_t> KeyValues::take_uint(const std::string& key) {
  auto e = take(key);
  if (!e) return std::nullopt;
  std::uint64_t v = 0;
  const auto& s = e->value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kValidation, "expected a non-negative integer", ctx(key, e->line));
  return v;
}

std::optional<bool> KeyValues::take_bool(const std::string& key) {
  auto e = take(key);
  if (!e) return std::nullopt;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  throw Error(ErrorCode::kValidation, "expected true or false", ctx(key, e->line));
}

void KeyValues::require_consumed() const {
  if (entries_.empty()) return;
  const auto& [key, e] = *entries_.begin();
  throw Error(ErrorCode::kValidation, "unknown setting " + key, ctx(key, e.line));
}

}  // namespace pedeval
