#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace s2h {

/// Uppercase English name of a digit 0-9 ("NINE").
std::string_view number_word(int digit);
std::optional<int> parse_number_word(std::string_view word);

std::string encode_utf8(char32_t cp);
std::size_t utf8_length(std::string_view s);
/// Prefix of `s` holding the first `n` code points.
std::string utf8_prefix(std::string_view s, std::size_t n);
std::vector<char32_t> decode_utf8(std::string_view s);

std::vector<std::string_view> split(std::string_view s, std::string_view sep);
std::vector<std::string_view> split_lines(std::string_view s);
std::string_view trim(std::string_view s);
/// Collapse whitespace runs to one space and trim the ends.
std::string normalize_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace s2h
