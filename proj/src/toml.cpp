#include "cvt/toml.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace cvt::toml {

const std::string& Value::as_string() const {
  if (const auto* s = std::get_if<std::string>(&data)) return *s;
  throw ConfigError("value is not a string");
}

double Value::as_double() const {
  if (const auto* d = std::get_if<double>(&data)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&data))
    return static_cast<double>(*i);
  throw ConfigError("value is not a number");
}

std::int64_t Value::as_int() const {
  if (const auto* i = std::get_if<std::int64_t>(&data)) return *i;
  throw ConfigError("value is not an integer");
}

bool Value::as_bool() const {
  if (const auto* b = std::get_if<bool>(&data)) return *b;
  throw ConfigError("value is not a boolean");
}

const Array& Value::as_array() const {
  if (const auto* a = std::get_if<Array>(&data)) return *a;
  throw ConfigError("value is not an array");
}

const Value& Document::at(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError(fmt::format("missing required key \"{}\"", key));
  return it->second;
}

std::optional<std::string> Document::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.as_string();
}

std::optional<double> Document::get_double(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.as_double();
}

std::optional<std::int64_t> Document::get_int(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.as_int();
}

std::optional<bool> Document::get_bool(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.as_bool();
}

std::vector<std::string> Document::keys_under(const std::string& prefix) const {
  std::vector<std::string> keys;
  const std::string dotted = prefix + ".";
  for (const auto& [k, v] : entries_)
    if (k == prefix || k.rfind(dotted, 0) == 0) keys.push_back(k);
  return keys;
}

namespace {

struct Parser {
  std::string_view text;  // set by parse()
  std::size_t pos = 0;
  std::size_t line = 1;
  std::string table;
  std::map<std::string, Value> entries;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(fmt::format("line {}: {}", line, msg));
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
  }

  void skip_ws_and_comments() {
    for (;;) {
      skip_inline_ws();
      if (eof()) return;
      if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
        continue;
      }
      if (peek() == '\r') {
        ++pos;
        continue;
      }
      if (peek() == '\n') {
        ++pos;
        ++line;
        continue;
      }
      return;
    }
  }

  void expect_line_end() {
    skip_inline_ws();
    if (eof()) return;
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos;
    }
    if (!eof() && peek() == '\r') ++pos;
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    ++pos;
    ++line;
  }

  static bool is_bare_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_key() {
    // bare keys with optional dots: a, a.b
    std::string key;
    for (;;) {
      const std::size_t start = pos;
      while (!eof() && is_bare_char(peek())) ++pos;
      if (pos == start) fail("expected a key");
      key.append(text.substr(start, pos - start));
      if (!eof() && peek() == '.') {
        key.push_back('.');
        ++pos;
        continue;
      }
      return key;
    }
  }

  std::string parse_basic_string() {
    ++pos;  // opening quote
    std::string out;
    while (!eof() && peek() != '"') {
      char c = peek();
      if (c == '\n') fail("unterminated string");
      if (c == '\\') {
        ++pos;
        if (eof()) fail("unterminated escape");
        switch (peek()) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          default: fail("unsupported escape sequence");
        }
        ++pos;
        continue;
      }
      out.push_back(c);
      ++pos;
    }
    if (eof()) fail("unterminated string");
    ++pos;  // closing quote
    return out;
  }

  Value parse_scalar() {
    if (peek() == '"') return Value{parse_basic_string()};
    const std::size_t start = pos;
    while (!eof() && peek() != ',' && peek() != ']' && peek() != '#' &&
           peek() != '\n' && peek() != '\r' && peek() != ' ' && peek() != '\t')
      ++pos;
    std::string tok(text.substr(start, pos - start));
    if (tok.empty()) fail("expected a value");
    if (tok == "true") return Value{true};
    if (tok == "false") return Value{false};
    if (tok == "inf" || tok == "+inf") return Value{std::numeric_limits<double>::infinity()};
    if (tok == "-inf") return Value{-std::numeric_limits<double>::infinity()};
    // integer first, then float
    {
      std::int64_t iv{};
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
      if (ec == std::errc() && p == tok.data() + tok.size() &&
          tok.find_first_of(".eE") == std::string::npos)
        return Value{iv};
    }
    {
      double dv{};
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), dv);
      if (ec == std::errc() && p == tok.data() + tok.size()) return Value{dv};
    }
    fail(fmt::format("cannot parse value \"{}\"", tok));
  }

  Value parse_value() {
    if (peek() == '[') {
      ++pos;
      Array arr;
      for (;;) {
        skip_ws_and_comments();
        if (eof()) fail("unterminated array");
        if (peek() == ']') {
          ++pos;
          break;
        }
        arr.push_back(parse_value());
        skip_ws_and_comments();
        if (!eof() && peek() == ',') {
          ++pos;
          continue;
        }
        if (!eof() && peek() == ']') {
          ++pos;
          break;
        }
        fail("expected ',' or ']' in array");
      }
      return Value{std::move(arr)};
    }
    return parse_scalar();
  }

  void parse_table_header() {
    ++pos;  // '['
    skip_inline_ws();
    table = parse_key();
    skip_inline_ws();
    if (eof() || peek() != ']') fail("expected ']' to close table header");
    ++pos;
    expect_line_end();
  }

  void parse_assignment() {
    const std::string key = parse_key();
    skip_inline_ws();
    if (eof() || peek() != '=') fail(fmt::format("expected '=' after key \"{}\"", key));
    ++pos;
    skip_inline_ws();
    if (eof()) fail("expected a value");
    Value v = parse_value();
    const std::string full = table.empty() ? key : table + "." + key;
    if (!entries.emplace(full, std::move(v)).second)
      fail(fmt::format("duplicate key \"{}\"", full));
    expect_line_end();
  }

  Document run() {
    for (;;) {
      skip_ws_and_comments();
      if (eof()) break;
      if (peek() == '[')
        parse_table_header();
      else
        parse_assignment();
    }
    return Document(std::move(entries));
  }
};

}  // namespace

Document parse(std::string_view text) {
  Parser p;
  p.text = text;
  return p.run();
}

Document parse_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is)
    throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  std::ostringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  return parse(text);
}

}  // namespace cvt::toml
