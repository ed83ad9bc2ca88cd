#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rlab/errors.hpp"
#include "rlab/extension.hpp"
#include "rlab/moments.hpp"

using namespace rlab;

namespace {

const CurveSystem kCubicLinear = CurveSystem::parse("x^3, x");

// Direct sum with long double phases, for moderate n only.
std::complex<double> naive(const std::vector<std::int64_t>& pts, double a, double b) {
  std::complex<long double> z = 0;
  for (auto n : pts) {
    long double t = static_cast<long double>(a) * n * n * n + static_cast<long double>(b) * n;
    t -= std::floor(t);
    z += std::polar(1.0L, 2 * std::numbers::pi_v<long double> * t);
  }
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

TEST_CASE("operator values") {
  auto zero = WeightedSequence::indicator(3, {0});
  const double alpha[] = {0.3, 0.7};
  CHECK(std::abs(evaluate_operator(zero, kCubicLinear, alpha)) == doctest::Approx(1.0));

  auto pm = WeightedSequence::indicator(1, {-1, 1});
  const double origin[] = {0.0, 0.0};
  auto v = evaluate_operator(pm, kCubicLinear, origin);
  CHECK(v.real() == doctest::Approx(2.0));
  CHECK(v.imag() == doctest::Approx(0.0));

  auto pair = WeightedSequence::indicator(2, {1, 2});
  const double half[] = {0.5, 0.0};
  CHECK(std::abs(evaluate_operator(pair, kCubicLinear, half)) < 1e-12);
  const Rational half_exact[] = {{1, 2}, {0, 1}};
  CHECK(std::abs(evaluate_operator(pair, kCubicLinear, half_exact)) < 1e-12);

  const double wrong[] = {0.5};
  CHECK_THROWS_AS(evaluate_operator(pair, kCubicLinear, wrong), DimensionError);
}

TEST_CASE("operator agrees with a direct sum") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto full = WeightedSequence::indicator(30, [] {
    std::vector<std::int64_t> v;
    for (int i = -30; i <= 30; ++i) v.push_back(i);
    return v;
  }());
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha[] = {u(rng), u(rng)};
    auto got = evaluate_operator(full, kCubicLinear, alpha);
    auto want = naive(full.support(), alpha[0], alpha[1]);
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("exact phase reduction") {
  CHECK(fractional_product(0.5, 3) == 0.5);
  CHECK(fractional_product(0.75, -1) == 0.25);
  CHECK(fractional_product(Rational{1, 3}, 1000000000000000001LL) == doctest::Approx(2.0 / 3.0));
  CHECK(fractional_product(Rational{-1, 3}, 1) == doctest::Approx(2.0 / 3.0));
  // 0.1 as a double is 3602879701896397 / 2^55.
  const std::int64_t m = 1LL << 52;
  CHECK(fractional_product(0.1, m) == doctest::Approx(3602879701896397.0 / 8.0 - std::floor(3602879701896397.0 / 8.0)));
  CHECK_THROWS(fractional_product(Rational{1, 0}, 1));
}

TEST_CASE("triangle inequality and periodicity") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<std::int64_t, std::complex<double>>> w;
    for (int n = -10; n <= 10; ++n) {
      if (rng() % 2) w.emplace_back(n, std::complex<double>(u(rng) - 0.5, u(rng) - 0.5));
    }
    auto seq = WeightedSequence::weighted(10, w);
    const double alpha[] = {u(rng), u(rng)};
    const auto value = evaluate_operator(seq, kCubicLinear, alpha);
    CHECK(std::abs(value) <= seq.l1_norm() + 1e-12);
    const double shifted[] = {alpha[0] + 1.0, alpha[1] - 1.0};
    CHECK(std::abs(evaluate_operator(seq, kCubicLinear, shifted) - value) < 1e-12);
  }
}

TEST_CASE("Monte Carlo estimates") {
  auto zero = WeightedSequence::indicator(2, {0});
  for (double p : {1.0, 3.0, 10.0}) {
    auto est = monte_carlo_moment(zero, kCubicLinear, p, 1000, 1);
    CHECK(est.mean == doctest::Approx(1.0));
    CHECK(est.standard_error == doctest::Approx(0.0));
  }

  std::vector<std::int64_t> pts;
  for (int i = -4; i <= 4; ++i) pts.push_back(i);
  auto full = WeightedSequence::indicator(4, pts);
  auto exact = even_moment(full, kCubicLinear, 5);
  auto est = monte_carlo_moment(full, kCubicLinear, 10, 1000000, 12);
  CHECK(std::abs(est.mean - exact.value) <= 3 * est.standard_error);

  auto parseval = monte_carlo_moment(full, kCubicLinear, 2, 200000, 5);
  CHECK(std::abs(parseval.mean - 9.0) <= 3 * parseval.standard_error);
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
  auto set = WeightedSequence::indicator(5, {-5, -1, 0, 2, 3});
  auto one = monte_carlo_moment(set, kCubicLinear, 9, 300000, 77, 1);
  auto three = monte_carlo_moment(set, kCubicLinear, 9, 300000, 77, 3);
  CHECK(one.mean == three.mean);
  CHECK(one.standard_error == three.standard_error);
  CHECK(one.samples == 300000);
  auto other = monte_carlo_moment(set, kCubicLinear, 9, 300000, 78, 1);
  CHECK(other.mean != one.mean);
}
