#pragma once

// Line and token helpers shared by the file-format parsers.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kisslat/error.hpp"

namespace kisslat::detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Non-empty lines with surrounding whitespace removed; `#` starts a comment.
inline std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto b = line.find_first_not_of(" \t", pos);
    if (b == std::string_view::npos) break;
    auto e = line.find_first_of(" \t", b);
    if (e == std::string_view::npos) e = line.size();
    out.push_back(line.substr(b, e - b));
    pos = e;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view token, int base = 10) {
  Int value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (base == 10 && first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("invalid integer '" + std::string(token) + "'");
  }
  return value;
}

// Parses `key=<value>` and checks the key.
inline std::string_view keyed(std::string_view token, std::string_view key) {
  const auto eq = token.find('=');
  if (eq == std::string_view::npos || token.substr(0, eq) != key) {
    throw ParseError("expected '" + std::string(key) + "=<value>', got '" + std::string(token) + "'");
  }
  return token.substr(eq + 1);
}

}  // namespace kisslat::detail
