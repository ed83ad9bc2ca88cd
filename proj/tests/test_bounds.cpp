#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rlab/bounds.hpp"
#include "rlab/divisor.hpp"
#include "rlab/errors.hpp"

using namespace rlab;

namespace {

const Polynomial kPhi = Polynomial::parse("x^3");
const CurveSystem kCubicLinear = CurveSystem::parse("x^3, x");
const CurveSystem kCube = CurveSystem::parse("x^3");

WeightedSequence ind(std::int64_t n, std::vector<std::int64_t> pts) { return WeightedSequence::indicator(n, pts); }

// c_2(l) by walking all quadruples.
std::int64_t brute_c2(const std::vector<std::int64_t>& pts, const Polynomial& phi, std::int64_t l) {
  std::int64_t count = 0;
  for (auto x1 : pts)
    for (auto x2 : pts)
      for (auto y1 : pts)
        for (auto y2 : pts)
          if (x1 + x2 == y1 + y2 && phi(x1) + phi(x2) - phi(y1) - phi(y2) == l) ++count;
  return count;
}

}  // namespace

TEST_CASE("tenth moment bound examples") {
  for (std::int64_t n : {1, 5, 40}) {
    auto b = tenth_moment_bound(ind(n, {0}), kPhi);
    CHECK(b.bound == 8 * n + 1);
    CHECK(b.zero_term == 1);
    CHECK(b.nonzero_total == 0);
  }
  auto pts = oracle::interval(-2, 2);
  auto b = tenth_moment_bound(ind(2, pts), kPhi);
  const auto brute = oracle::moment(pts, oracle::cubic_linear, 5);
  CHECK(*even_moment(ind(2, pts), kCubicLinear, 5).exact == brute);
  CHECK(static_cast<i128>(brute) <= b.bound);
  CHECK(b.sum == b.zero_term + b.nonzero_total);
  CHECK(tenth_moment_bound(ind(4, {}), kPhi).bound == 0);
  CHECK_THROWS_AS(tenth_moment_bound(WeightedSequence::weighted(1, {{0, {0.5, 0}}}), kPhi), InvalidArgument);
}

TEST_CASE("tenth moment never exceeds the bound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 8);
    auto pts = oracle::random_subset(rng, n, 1 + rng() % (2 * n + 1));
    auto seq = ind(n, pts);
    CHECK(*even_moment(seq, kCubicLinear, 5).exact <= tenth_moment_bound(seq, kPhi).bound);
  }
}

TEST_CASE("eighth moment bounds") {
  auto b = eighth_moment_bound(ind(7, {0}), kPhi);
  CHECK(b.full_bound == 57);

  auto pts = oracle::interval(-3, 3);
  auto seq = ind(3, pts);
  const auto brute = oracle::moment(pts, oracle::cube_only, 4);
  auto e = eighth_moment_bound(seq, kPhi);
  CHECK(*even_moment(seq, kCube, 4).exact == brute);
  CHECK(static_cast<i128>(brute) <= e.full_bound);
  CHECK(e.full_bound <= e.refined_bound);

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 12);
    auto sub = oracle::random_subset(rng, n, 1 + rng() % (2 * n + 1));
    auto s = ind(n, sub);
    auto bound = eighth_moment_bound(s, kPhi);
    CHECK(*even_moment(s, kCube, 4).exact <= bound.full_bound);
    CHECK(bound.full_bound <= bound.refined_bound);
  }
  CHECK_THROWS_AS(eighth_moment_bound(seq, Polynomial::parse("x^2")), InvalidArgument);
}

TEST_CASE("divisor check for the cube") {
  auto pts = oracle::interval(-5, 5);
  auto seq = ind(5, pts);
  auto one = c2_nonzero_divisor_check(seq, kPhi, 1);
  CHECK(one.count == 0);
  CHECK_FALSE(one.divisible);
  CHECK(one.ceiling == 0);
  CHECK(one.holds);

  auto three = c2_nonzero_divisor_check(seq, kPhi, 3);
  CHECK(three.count == brute_c2(pts, kPhi, 3));
  CHECK(three.structural == three.count);
  CHECK(three.ceiling == 8 * divisor(1, 3));
  CHECK(three.holds);
  CHECK(three.route == "cubic");
  CHECK_THROWS_AS(c2_nonzero_divisor_check(seq, kPhi, 0), InvalidArgument);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 7);
    auto sub = oracle::random_subset(rng, n, 2 + rng() % (2 * n));
    auto table = c_table(ind(n, sub), kPhi, 2, CFlavor::constrained);
    for (const auto& [l, c] : table.entries()) {
      if (l == 0) continue;
      auto cert = c2_nonzero_divisor_check(ind(n, sub), kPhi, l);
      CHECK(cert.count == c);
      CHECK(cert.structural == c);
      CHECK(l % 3 == 0);
      CHECK(cert.count <= cert.ceiling);
      CHECK(cert.triples == 4 * cert.tau3);
    }
  }
}

TEST_CASE("divisor check for general polynomials") {
  std::mt19937_64 rng(24);
  const char* polys[] = {"x^3 + x", "2*x^3 - x^2", "x^4", "x^4 - 3*x^3 + x", "x^5 + 2*x"};
  for (const char* text : polys) {
    const Polynomial phi = Polynomial::parse(text);
    for (int trial = 0; trial < 6; ++trial) {
      const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 5);
      auto sub = oracle::random_subset(rng, n, 2 + rng() % (2 * n));
      auto table = c_table(ind(n, sub), phi, 2, CFlavor::constrained);
      for (const auto& [l, c] : table.entries()) {
        if (l == 0) continue;
        auto cert = c2_nonzero_divisor_check(ind(n, sub), phi, l);
        CHECK(cert.route == "general");
        CHECK(cert.count == brute_c2(sub, phi, l));
        CHECK(cert.count == c);
        CHECK(cert.holds);
      }
    }
  }
}
