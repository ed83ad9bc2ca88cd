#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact arithmetic left the supported integer range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Vector lengths or variable counts do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A table build would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exact division that must be remainder-free was not. Indicates a bug.
class DivisionResidueError : public Error {
 public:
  using Error::Error;
};

/// Human-readable byte count for resource messages, e.g. "512 KiB" or "3.2 GiB".
inline std::string format_bytes(long double bytes) {
  static const char* units[] = {"B", "KiB", "MiB", "GiB", "TiB", "PiB"};
  int u = 0;
  while (bytes >= 1024 && u < 5) {
    bytes /= 1024;
    ++u;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, bytes < 10 && u > 0 ? "%.1Lf %s" : "%.0Lf %s", bytes, units[u]);
  return buf;
}

}  // namespace rlab
