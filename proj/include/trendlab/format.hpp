#pragma once

#include <charconv>
#include <string>

namespace trendlab {

/// Shortest round-trip decimal text for a double. Deterministic and
/// locale-independent, so repeated runs produce byte-identical files.
inline std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

} // namespace trendlab
