#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/lemmas.hpp"
#include "rlab/moments.hpp"
#include "rlab/report.hpp"

namespace rlab {

struct ScanConfig {
  std::string curve = "x^3, x";
  SetSpec set = SetSpec::full();
  std::vector<std::int64_t> radii;  // ascending
  std::vector<std::size_t> folds = {1};
  ComputeOptions options;
  std::uint64_t seed = 0;
  std::string output;  // JSON lines, rewritten on every run; empty = none
  double tolerance = 0.3;
  MomentEngine engine = MomentEngine::automatic;
  /// Scan points computed at once; each gets an equal share of the memory budget.
  std::size_t parallel_points = 1;

  /// Throws InvalidArgument on an empty or unsorted N list, s = 0 or a zero budget.
  void validate() const;
};

struct ScanFailure {
  std::int64_t radius = 0;
  std::size_t s = 0;
  std::string message;
};

struct ScanFit {
  std::size_t s = 0;
  /// log moment against log(2N + 1), the length of the interval, compared
  /// with the conjectured exponent.
  SlopeFit moment;
  /// log(moment / bound) against log(2N + 1).
  SlopeFit ratio;
};

struct ScanResult {
  std::vector<MomentReport> reports;
  std::vector<ScanFit> fits;  // one per s with at least two usable points
  std::vector<ScanFailure> failures;
};

/// Computes every (N, s) moment in order. Resource failures at a point are
/// recorded and skipped; other errors propagate.
ScanResult run_scan(const ScanConfig& config);

struct VerifyConfig {
  std::vector<std::string> suite;
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  /// Random sets use N in [1, max_radius].
  std::int64_t max_radius = 30;
  std::string phi = "x^3";
  /// Fold used by the layer-cake check (T(a) = ||Ea||_{2s}).
  std::size_t layer_fold = 3;
  /// Random subsets measured to calibrate the layer-cake constant.
  std::size_t layer_subsets = 100;
  ComputeOptions options;
  std::string output;  // JSON lines, rewritten; empty = none
};

struct VerifySummary {
  std::vector<LemmaVerdict> verdicts;
  std::size_t failed = 0;
  std::size_t vacuous = 0;
};

/// Known suite ids: cubic-identity, c2-zero, c3-zero, sde, layer-cake,
/// c2-divisor, bound-10, bound-8.
const std::vector<std::string>& known_lemma_ids();

/// Runs `trials` instances of every id (cubic-identity runs once). Trial i
/// draws its set from (seed, i) alone, so different ids see the same sets.
VerifySummary run_verify(const VerifyConfig& config);

/// Set for trial i of a verify run: density cycles through 0.2, 0.5, 1.0.
GeneratedSet trial_set(std::uint64_t seed, std::size_t trial, std::int64_t max_radius);

}  // namespace rlab
