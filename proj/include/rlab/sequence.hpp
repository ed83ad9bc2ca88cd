#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rlab/polynomial.hpp"

namespace rlab {

/// Complex-weighted sequence a(n) supported on the integers in [-N, N].
/// Only non-zero weights are stored; the support is kept sorted.
class WeightedSequence {
 public:
  using Weight = std::complex<double>;

  WeightedSequence() = default;

  /// Indicator of a set of integers inside [-radius, radius]. Duplicates are merged.
  static WeightedSequence indicator(std::int64_t radius, std::vector<std::int64_t> points);
  static WeightedSequence weighted(std::int64_t radius, std::vector<std::pair<std::int64_t, Weight>> entries);

  std::int64_t radius() const { return radius_; }
  bool is_indicator() const { return indicator_; }
  bool empty() const { return support_.empty(); }
  /// Support size; A for an indicator.
  std::size_t cardinality() const { return support_.size(); }
  const std::vector<std::int64_t>& support() const { return support_; }
  const std::vector<Weight>& weights() const { return weights_; }

  double l2_norm() const;
  double l1_norm() const;
  double max_abs() const;
  /// Exact squared l2 norm when every weight is a Gaussian integer.
  std::optional<i128> l2_norm_squared_exact() const;

  /// Indicator of a subset of the support (points outside the support are rejected).
  WeightedSequence indicator_of(std::span<const std::int64_t> subset) const;

 private:
  std::int64_t radius_ = 0;
  bool indicator_ = true;
  std::vector<std::int64_t> support_;
  std::vector<Weight> weights_;
};

/// Ordered tuple of non-constant univariate integer polynomials (phi_1, ..., phi_d), d in {1, 2, 3}.
class CurveSystem {
 public:
  static constexpr std::size_t kMaxDimension = 3;
  using Point = std::array<std::int64_t, kMaxDimension>;

  explicit CurveSystem(std::vector<Polynomial> components);
  /// Comma separated components, e.g. "x^3, x".
  static CurveSystem parse(std::string_view text);

  std::size_t dimension() const { return components_.size(); }
  const Polynomial& component(std::size_t i) const { return components_.at(i); }
  const std::vector<Polynomial>& components() const { return components_; }
  /// Sum of component degrees.
  int degree_sum() const;

  /// (phi_1(n), ..., phi_d(n)), unused coordinates zero. Throws OverflowError past 64 bits.
  Point values(std::int64_t n) const;

  std::string to_string() const;

 private:
  std::vector<Polynomial> components_;
};

struct SetSpec {
  enum class Kind { full, random, progression, explicit_list };

  Kind kind = Kind::full;
  double density = 1.0;
  std::uint64_t seed = 0;
  std::int64_t start = 0;
  std::int64_t step = 1;
  std::vector<std::int64_t> points;

  static SetSpec full() { return {}; }
  static SetSpec random(double density, std::uint64_t seed);
  static SetSpec progression(std::int64_t start, std::int64_t step);
  static SetSpec explicit_points(std::vector<std::int64_t> points);

  /// Accepts "full", "random:0.5", "progression:-4:4", "explicit:1,2,5".
  /// A random spec parsed from text takes the seed argument.
  static SetSpec parse(std::string_view text, std::uint64_t seed = 0);
  std::string to_string() const;
};

struct GeneratedSet {
  WeightedSequence sequence;
  bool empty = false;
  std::string descriptor;
};

/// Builds the indicator set described by spec inside [-radius, radius].
/// Random sets include each point independently with probability `density`
/// and depend only on (seed, radius).
GeneratedSet make_set(const SetSpec& spec, std::int64_t radius);

nlohmann::json set_to_json(const WeightedSequence& seq);
nlohmann::json sequence_to_json(const WeightedSequence& seq);
WeightedSequence set_from_json(const nlohmann::json& j, std::int64_t radius);
WeightedSequence sequence_from_json(const nlohmann::json& j, std::int64_t radius);

}  // namespace rlab
