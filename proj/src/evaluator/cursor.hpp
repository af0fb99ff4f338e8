#pragma once

#include <charconv>
#include <optional>
#include <string_view>

namespace s2h::eval::detail {

// Left-to-right matcher over one template line.
struct Cursor {
  std::string_view s;

  bool lit(std::string_view p) {
    if (!s.starts_with(p)) return false;
    s.remove_prefix(p.size());
    return true;
  }

  std::optional<long long> integer() {
    long long v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end == s.data()) return std::nullopt;
    s.remove_prefix(static_cast<std::size_t>(end - s.data()));
    return v;
  }

  // Text up to the first occurrence of `delim`, consuming both.
  std::optional<std::string_view> until(std::string_view delim) {
    const auto pos = s.find(delim);
    if (pos == std::string_view::npos) return std::nullopt;
    std::string_view out = s.substr(0, pos);
    s.remove_prefix(pos + delim.size());
    return out;
  }

  // A parenthesized group including the parentheses.
  std::optional<std::string_view> group() {
    if (!s.starts_with('(')) return std::nullopt;
    const auto pos = s.find(')');
    if (pos == std::string_view::npos) return std::nullopt;
    std::string_view out = s.substr(0, pos + 1);
    s.remove_prefix(pos + 1);
    return out;
  }

  bool done() const { return s.empty(); }
};

}  // namespace s2h::eval::detail
