#pragma once

#include <cstdio>
#include <string>

namespace pherm::io {

/// Round-trip decimal representation of a double.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Short representation for figure coordinates.
inline std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace pherm::io
