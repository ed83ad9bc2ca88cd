#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rlab/rep_table.hpp"

namespace rlab {

enum class MomentEngine {
  automatic,
  /// Iterated sparse convolution into a hash table (any dimension, any weights).
  sparse,
  /// Univariate indicator only: s-multisets enumerated into sorted (value, weight) runs.
  sorted_multisets,
  /// Univariate indicator only: multisets accumulated into dense windows over the value range.
  dense_window,
};

const char* to_string(MomentEngine engine);
MomentEngine parse_engine(std::string_view text);

struct MomentValue {
  /// Exact integral of |Ea|^{2s}; present for indicator inputs.
  std::optional<i128> exact;
  /// Floating value (equals `exact` when that is present and representable).
  double value = 0;
  MomentEngine engine = MomentEngine::sparse;
};

/// Integral over the torus of |Ea|^{2s} = sum_l |r_s(l)|^2.
MomentValue even_moment(const WeightedSequence& seq, const CurveSystem& curve, std::size_t s,
                        const ComputeOptions& options = {}, MomentEngine engine = MomentEngine::automatic);

/// Engine `automatic` would pick for an indicator input.
MomentEngine choose_engine(const WeightedSequence& seq, const CurveSystem& curve, std::size_t s,
                           const ComputeOptions& options);

/// s-fold representation counts of a univariate polynomial over an indicator
/// set, as (value, ordered-tuple count) pairs in ascending value order.
std::vector<std::pair<std::int64_t, std::int64_t>> univariate_rep(const WeightedSequence& seq,
                                                                  const Polynomial& phi, std::size_t s,
                                                                  const ComputeOptions& options = {});

enum class CFlavor {
  /// c_t(l): sum_i (phi(x_i) - phi(y_i)) = l together with sum_i (x_i - y_i) = 0.
  constrained,
  /// c'_t(l): only the phi equation.
  unconstrained,
};

/// Sparse table l -> number of 2t-tuples (x, y) in A^t x A^t.
class CTable {
 public:
  CTable(std::size_t fold, CFlavor flavor, std::vector<std::pair<std::int64_t, std::int64_t>> entries);

  std::size_t fold() const { return fold_; }
  CFlavor flavor() const { return flavor_; }
  /// Ascending in l, zero counts omitted.
  const std::vector<std::pair<std::int64_t, std::int64_t>>& entries() const { return entries_; }
  std::int64_t at(std::int64_t l) const;
  i128 total() const;
  /// max over l != 0 of the count (0 if no such entry).
  std::int64_t max_nonzero() const;

 private:
  std::size_t fold_;
  CFlavor flavor_;
  std::vector<std::pair<std::int64_t, std::int64_t>> entries_;
};

/// Constrained tables pair x-side and y-side entries of the t-fold table of
/// (phi(n), n) that share the same linear sum; unconstrained tables take the
/// autocorrelation of the t-fold table of phi(n).
CTable c_table(const WeightedSequence& seq, const Polynomial& phi, std::size_t t, CFlavor flavor,
               const ComputeOptions& options = {});

}  // namespace rlab
