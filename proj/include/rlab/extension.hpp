#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "rlab/sequence.hpp"

namespace rlab {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// frac(alpha * m) in [0, 1). A finite double is a dyadic rational, so the
/// reduction is carried out exactly in integer arithmetic; no precision is lost
/// to the size of m.
double fractional_product(double alpha, std::int64_t m);
double fractional_product(Rational alpha, std::int64_t m);

/// sum_{|n| <= N} a(n) e(alpha . Phi(n)), e(t) = exp(2 pi i t).
std::complex<double> evaluate_operator(const WeightedSequence& seq, const CurveSystem& curve,
                                       std::span<const double> alpha);
std::complex<double> evaluate_operator(const WeightedSequence& seq, const CurveSystem& curve,
                                       std::span<const Rational> alpha);

struct MonteCarloEstimate {
  double mean = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
};

/// Plain Monte Carlo estimate of the integral of |Ea|^p over [0,1)^d.
///
/// Samples are split into fixed blocks, each with its own generator derived
/// from (seed, block index); blocks are combined in index order, so the result
/// does not depend on `threads` (0 picks the hardware concurrency).
MonteCarloEstimate monte_carlo_moment(const WeightedSequence& seq, const CurveSystem& curve, double p,
                                      std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace rlab
