#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlab/sequence.hpp"
#include "rlab/sparse_table.hpp"

namespace rlab {

struct ComputeOptions {
  /// Estimated peak bytes a single table build may use.
  std::uint64_t memory_budget = 8ULL << 30;
  /// Worker threads for table construction; 0 = hardware concurrency.
  unsigned threads = 0;
  /// Upper bound on dense-window length (entries) for univariate moments; 0 = automatic.
  std::uint64_t window_entries = 0;
};

/// s-fold representation function of a curve's value vector:
/// entry(l) = sum over (n_1..n_s) in support^s with sum_j Phi(n_j) = l of prod_j a(n_j).
/// Zero entries are never stored.
template <class Weight>
class RepTable {
 public:
  RepTable(std::size_t dimension, std::size_t fold, SparseTable<Weight> entries)
      : dimension_(dimension), fold_(fold), entries_(std::move(entries)) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t fold() const { return fold_; }
  std::size_t size() const { return entries_.size(); }
  Weight at(const LatticeKey& l) const { return entries_.at(l); }
  const SparseTable<Weight>& entries() const { return entries_; }
  std::vector<std::pair<LatticeKey, Weight>> sorted_entries() const { return entries_.sorted(); }
  Weight total_mass() const;

 private:
  std::size_t dimension_;
  std::size_t fold_;
  SparseTable<Weight> entries_;
};

using CountTable = RepTable<std::int64_t>;
using WeightTable = RepTable<std::complex<double>>;

/// Exact counts for an indicator sequence. Built by iterated sparse
/// convolution r_s = r_{s-1} * r_1; throws ResourceError naming the fold and
/// the estimated entry count when a step would exceed the memory budget.
CountTable rep_counts(const WeightedSequence& seq, const CurveSystem& curve, std::size_t fold,
                      const ComputeOptions& options = {});

/// Same construction for arbitrary complex weights.
WeightTable rep_weights(const WeightedSequence& seq, const CurveSystem& curve, std::size_t fold,
                        const ComputeOptions& options = {});

/// Box prod_i [s min phi_i, s max phi_i] over the support; the table's support lies inside it.
std::array<std::pair<std::int64_t, std::int64_t>, 3> support_box(const WeightedSequence& seq,
                                                                   const CurveSystem& curve, std::size_t fold);

/// Little-endian binary export: u32 d, u32 s, u64 count, then per entry d x i64
/// coordinates followed by an i64 count (CountTable) or two f64 (WeightTable).
/// Entries are written in ascending key order.
void write_binary(std::ostream& out, const CountTable& table);
void write_binary(std::ostream& out, const WeightTable& table);
CountTable read_binary_counts(std::istream& in);

/// CSV with header l1[,l2[,l3]],weight (or re,im), ascending key order.
void write_csv(std::ostream& out, const CountTable& table);
void write_csv(std::ostream& out, const WeightTable& table);

}  // namespace rlab
