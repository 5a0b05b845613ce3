#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace micdoa {

/// Shortest round-trip decimal form of a double via std::to_chars, so CSV and
/// JSON output is byte-stable across platforms ("nan"/"inf" included).
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace micdoa
