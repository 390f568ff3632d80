#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>

namespace pedeval {

/// Minimal TOML-style settings: `key = value` lines, `[section]` headers
/// (keys become "section.key"), `#` comments, optional double quotes around
/// string values. Readers consume keys; leftovers are reported as unknown.
class KeyValues {
  struct Entry {
    std::string value;
    int line = 0;
  };

 public:
  static KeyValues parse(const std::string& text);

  bool empty() const noexcept { return entries_.empty(); }
  bool contains(const std::string& key) const { return entries_.contains(key); }
  void set(const std::string& key, std::string value) { entries_[key] = Entry{std::move(value), 0}; }

  std::optional<std::string> take_string(const std::string& key);
  std::optional<double> take_double(const std::string& key);
  std::optional<std::int64_t> take_int(const std::string& key);
  std::optional<std::uint64_t> take_uint(const std::string& key);
  std::optional<bool> take_bool(const std::string& key);

  template <typename T>
  void take_into(const std::string& key, T& target);

  /// Throws Error(kValidation) naming the first unconsumed key.
  void require_consumed() const;

 private:
  std::optional<Entry> take(const std::string& key);
  std::map<std::string, Entry> entries_;
};

template <typename T>
void KeyValues::take_into(const std::string& key, T& target) {
  if constexpr (std::is_same_v<T, bool>) {
    if (auto v = take_bool(key)) target = *v;
  } else if constexpr (std::is_floating_point_v<T>) {
    if (auto v = take_double(key)) target = *v;
  } else if constexpr (std::is_unsigned_v<T>) {
    if (auto v = take_uint(key)) target = static_cast<T>(*v);
  } else if constexpr (std::is_integral_v<T>) {
    if (auto v = take_int(key)) target = static_cast<T>(*v);
  } else {
    if (auto v = take_string(key)) target = *v;
  }
}

}  // namespace pedeval
