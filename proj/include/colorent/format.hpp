#pragma once

#include <charconv>
#include <string>

namespace colorent {

/// Shortest round-trip decimal form, independent of the C++ locale.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace colorent
