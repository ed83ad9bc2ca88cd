#include "rlab/extension.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

namespace rlab {

namespace {

constexpr std::uint64_t kBlockSize = 1u << 16;

std::complex<double> unit(double t) {
  t -= std::floor(t);
  double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

std::vector<CurveSystem::Point> curve_values(const WeightedSequence& seq, const CurveSystem& curve) {
  std::vector<CurveSystem::Point> out;
  out.reserve(seq.cardinality());
  for (auto n : seq.support()) out.push_back(curve.values(n));
  return out;
}

template <class Coordinate>
std::complex<double> sum_terms(const WeightedSequence& seq, const CurveSystem& curve,
                               const std::vector<CurveSystem::Point>& values, std::span<const Coordinate> alpha) {
  std::complex<double> total(0.0, 0.0);
  for (std::size_t j = 0; j < values.size(); ++j) {
    double t = 0;
    for (std::size_t i = 0; i < curve.dimension(); ++i) t += fractional_product(alpha[i], values[j][i]);
    total += seq.weights()[j] * unit(t);
  }
  return total;
}

struct Moments {
  std::uint64_t count = 0;
  double mean = 0;
  double m2 = 0;  // sum of squared deviations

  void add(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    double n = static_cast<double>(count), m = static_cast<double>(o.count);
    double delta = o.mean - mean;
    mean += delta * m / (n + m);
    m2 += o.m2 + delta * delta * n * m / (n + m);
    count += o.count;
  }
};

}  // namespace

double fractional_product(double alpha, std::int64_t m) {
  if (!std::isfinite(alpha)) throw InvalidArgument("phase coordinate must be finite");
  if (alpha == 0.0 || m == 0) return 0.0;
  int exponent = 0;
  double fraction = std::frexp(alpha, &exponent);  // alpha = fraction * 2^exponent, |fraction| in [0.5, 1)
  auto mantissa = static_cast<std::int64_t>(std::ldexp(fraction, 53));
  int shift = 53 - exponent;  // alpha = mantissa / 2^shift
  if (shift <= 0) return 0.0;
  i128 product = static_cast<i128>(mantissa) * m;  // |product| < 2^116
  double result;
  if (shift >= 127) {
    result = std::ldexp(static_cast<double>(product), -shift);
    if (result < 0) result += 1.0;
  } else {
    u128 mask = (static_cast<u128>(1) << shift) - 1;
    u128 residue = static_cast<u128>(product) & mask;  // product mod 2^shift, also for negative products
    result = std::ldexp(static_cast<double>(residue), -shift);
  }
  return result >= 1.0 ? 0.0 : result;
}

double fractional_product(Rational alpha, std::int64_t m) {
  if (alpha.den <= 0) throw InvalidArgument("rational phase needs a positive denominator");
  i128 den = alpha.den;
  i128 r = (static_cast<i128>(alpha.num) % den) * (static_cast<i128>(m) % den) % den;
  if (r < 0) r += den;
  return static_cast<double>(r) / static_cast<double>(den);
}

std::complex<double> evaluate_operator(const WeightedSequence& seq, const CurveSystem& curve,
                                       std::span<const double> alpha) {
  if (alpha.size() != curve.dimension()) throw DimensionError("phase vector length differs from curve dimension");
  return sum_terms(seq, curve, curve_values(seq, curve), alpha);
}

std::complex<double> evaluate_operator(const WeightedSequence& seq, const CurveSystem& curve,
                                       std::span<const Rational> alpha) {
  if (alpha.size() != curve.dimension()) throw DimensionError("phase vector length differs from curve dimension");
  return sum_terms(seq, curve, curve_values(seq, curve), alpha);
}

MonteCarloEstimate monte_carlo_moment(const WeightedSequence& seq, const CurveSystem& curve, double p,
                                      std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw InvalidArgument("Monte Carlo needs at least one sample");
  if (!(p >= 1.0)) throw InvalidArgument("moment exponent must be at least 1");
  const auto values = curve_values(seq, curve);
  const std::size_t d = curve.dimension();
  const bool even = std::floor(p / 2) == p / 2;

  std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> partial(blocks);

  auto run_block = [&](std::uint64_t b) {
    std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(sseq);
    std::uint64_t begin = b * kBlockSize, end = std::min(samples, begin + kBlockSize);
    std::array<double, CurveSystem::kMaxDimension> alpha{};
    Moments acc;
    for (std::uint64_t k = begin; k < end; ++k) {
      for (std::size_t i = 0; i < d; ++i) alpha[i] = static_cast<double>(rng() >> 11) * 0x1p-53;
      auto e = sum_terms(seq, curve, values, std::span<const double>(alpha.data(), d));
      double integrand = even ? std::pow(std::norm(e), p / 2) : std::pow(std::abs(e), p);
      acc.add(integrand);
    }
    partial[b] = acc;
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  MonteCarloEstimate out;
  out.samples = total.count;
  out.mean = total.mean;
  if (total.count > 1) {
    double variance = total.m2 / static_cast<double>(total.count - 1);
    out.standard_error = std::sqrt(std::max(variance, 0.0) / static_cast<double>(total.count));
  }
  return out;
}

}  // namespace rlab
