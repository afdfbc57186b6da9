#pragma once

#include <charconv>
#include <string>

namespace wpgen {

/// Shortest round-trip decimal form; keeps CSV output byte-stable across
/// platforms.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace wpgen
