#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cvt/errors.hpp"

// Minimal TOML reader covering what scenario files use: [table] and
// [dotted.table] headers, bare keys, strings, integers, floats (inf
// included), booleans, flat arrays, and # comments. Keys are exposed
// flattened as "table.key". Parse errors throw ConfigError with the line.

namespace cvt::toml {

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<std::string, double, std::int64_t, bool, Array> data;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const {
    return std::holds_alternative<double>(data) ||
           std::holds_alternative<std::int64_t>(data);
  }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }

  const std::string& as_string() const;
  double as_double() const;  // accepts integers
  std::int64_t as_int() const;
  bool as_bool() const;
  const Array& as_array() const;
};

class Document {
 public:
  explicit Document(std::map<std::string, Value> entries)
      : entries_(std::move(entries)) {}

  bool contains(const std::string& key) const { return entries_.count(key) > 0; }
  const Value& at(const std::string& key) const;  // ConfigError when absent

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::int64_t> get_int(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;

  /// Keys beginning with "prefix." (or equal to prefix).
  std::vector<std::string> keys_under(const std::string& prefix) const;
  const std::map<std::string, Value>& entries() const { return entries_; }

 private:
  std::map<std::string, Value> entries_;
};

Document parse(std::string_view text);
Document parse_file(const std::filesystem::path& path);

}  // namespace cvt::toml
