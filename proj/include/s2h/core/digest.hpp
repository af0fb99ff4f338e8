#pragma once

#include <string>
#include <string_view>

namespace s2h {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace s2h
