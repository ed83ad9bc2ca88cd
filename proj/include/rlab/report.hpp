#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlab/integer.hpp"

namespace rlab {

/// One computed moment together with its normalisation.
struct MomentReport {
  std::int64_t radius = 0;
  std::string set;
  std::string curve;
  std::size_t p = 0;
  std::size_t cardinality = 0;
  std::optional<i128> exact;
  double moment = 0;
  double bound = 0;  // > 0
  double ratio = 0;  // moment / bound
  std::string engine;
  double wall_seconds = 0;

  nlohmann::json to_json() const;
};

/// max(1, N^(s-K)) * A^s, the right-hand side of the conjectured estimate
/// ||Ea||_{2s}^{2s} <~ (1 + N^{s-K}) ||a||_2^{2s} for an indicator of size A,
/// where K is the sum of the curve's degrees.
double normalizing_bound(std::int64_t radius, std::size_t cardinality, std::size_t s, int degree_sum);

/// Growth exponent of that bound in N for full sets: s + max(0, s - K).
double conjectured_slope(std::size_t s, int degree_sum);

/// Ordinary least squares fit y = intercept + slope * x.
struct SlopeFit {
  std::vector<double> xs;
  std::vector<double> ys;
  double slope = 0;
  double intercept = 0;
  double residual_max = 0;
  std::optional<double> conjectured;
  double tolerance = 0;
  bool within_tolerance = false;

  nlohmann::json to_json() const;
};

/// Needs at least two distinct abscissae. `conjectured` (if given) is compared
/// with the fitted slope using `tolerance`.
SlopeFit fit_slope(std::span<const double> xs, std::span<const double> ys, std::optional<double> conjectured = {},
                   double tolerance = 0.3);

/// Appends (or, with truncate, writes) one compact JSON document per line.
class JsonLinesWriter {
 public:
  JsonLinesWriter() = default;
  JsonLinesWriter(const std::string& path, bool truncate);

  bool enabled() const { return !path_.empty(); }
  void write(const nlohmann::json& line);

 private:
  std::string path_;
};

/// Name of the timing field that byte-for-byte comparisons ignore.
inline constexpr const char* kTimingField = "wall_seconds";

}  // namespace rlab
