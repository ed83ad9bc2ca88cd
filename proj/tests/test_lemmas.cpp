#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rlab/bounds.hpp"
#include "rlab/errors.hpp"
#include "rlab/lemmas.hpp"

using namespace rlab;

namespace {

const Polynomial kPhi = Polynomial::parse("x^3");
const CurveSystem kCubicLinear = CurveSystem::parse("x^3, x");

WeightedSequence ind(std::int64_t n, std::vector<std::int64_t> pts) { return WeightedSequence::indicator(n, pts); }

std::int64_t brute_c_zero(const std::vector<std::int64_t>& pts, const Polynomial& phi, std::size_t t) {
  auto table = oracle::c_table(pts, [&](std::int64_t x) { return phi(x); }, t, true);
  return table.count(0) ? table[0] : 0;
}

}  // namespace

TEST_CASE("cubic identity verdict") {
  auto v = verify_cubic_identity(-20, 20);
  CHECK(v.holds);
  CHECK(v.lhs == "68921");
  CHECK(v.rhs == "68921");
  CHECK(v.extras["symbolic"] == true);
  CHECK_FALSE(v.witness.has_value());
  CHECK(verify_cubic_identity(0, 0).holds);
  CHECK(verify_cubic_identity(1, 3).holds);
}

TEST_CASE("c2(0) verdicts") {
  auto v = verify_c2_zero(ind(2, {1, 2}), kPhi);
  CHECK(v.lhs == "6");
  CHECK(v.rhs == "12");
  CHECK(v.holds);

  auto empty = verify_c2_zero(ind(3, {}), kPhi);
  CHECK(empty.lhs == "0");
  CHECK(empty.rhs == "0");
  CHECK(empty.holds);

  for (std::int64_t n = 1; n <= 8; ++n) {
    auto pts = oracle::interval(-n, n);
    auto full = verify_c2_zero(ind(n, pts), kPhi);
    CHECK(full.lhs == std::to_string(brute_c_zero(pts, kPhi, 2)));
    CHECK(full.extras["structural"] == full.lhs);
    CHECK(full.holds);
  }

  std::mt19937_64 rng(31);
  for (const char* text : {"x^3 + x", "x^4", "x^4 + x^2", "x^5 - x"}) {
    const Polynomial phi = Polynomial::parse(text);
    for (int trial = 0; trial < 8; ++trial) {
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 6);
      auto pts = oracle::random_subset(rng, n, 1 + rng() % (2 * n + 1));
      auto g = verify_c2_zero(ind(n, pts), phi);
      CHECK(g.lhs == std::to_string(brute_c_zero(pts, phi, 2)));
      CHECK(g.extras["structural_matches"] == true);
      CHECK(g.holds);
    }
  }
  CHECK_THROWS_AS(verify_c2_zero(ind(2, {1}), Polynomial::parse("x^2")), InvalidArgument);
}

TEST_CASE("c3(0) recount") {
  auto pts = std::vector<std::int64_t>{0, 1};
  auto r = c3_zero_recount(ind(1, pts));
  CHECK(r.exact == brute_c_zero(pts, kPhi, 3));
  CHECK(r.vanishing + r.nonvanishing == r.exact);

  pts = {-1, 0, 1};
  r = c3_zero_recount(ind(1, pts));
  CHECK(r.exact == brute_c_zero(pts, kPhi, 3));
  CHECK(r.vanishing + r.nonvanishing == r.exact);
  CHECK(r.vanishing > 0);

  auto single = verify_c3_zero(ind(5, {3}));
  CHECK(single.lhs == "1");
  CHECK(single.holds);

  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 10);
    auto sub = oracle::random_subset(rng, n, 1 + rng() % std::min<std::int64_t>(2 * n + 1, 8));
    auto rc = c3_zero_recount(ind(n, sub));
    if (sub.size() <= 6) CHECK(rc.exact == brute_c_zero(sub, kPhi, 3));
    CHECK(rc.vanishing + rc.nonvanishing == rc.exact);
    CHECK(rc.exact <= rc.bound);
    CHECK(verify_c3_zero(ind(n, sub)).holds);
  }
}

TEST_CASE("Schwartz-Zippel style verdicts") {
  auto diag = verify_sde(Polynomial::parse("x0 - x1", 2), oracle::interval(1, 12));
  CHECK(diag.lhs == "12");
  CHECK(diag.rhs == "12");
  CHECK(diag.holds);

  auto two = verify_sde(Polynomial::parse("(x0 - x1)*(x1 - x2)", 3), oracle::interval(1, 5));
  CHECK(two.lhs == "45");
  CHECK(two.rhs == "50");
  CHECK(two.holds);

  CHECK_THROWS_AS(verify_sde(Polynomial(2), oracle::interval(1, 3)), InvalidArgument);

  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = random_polynomial(rng, 3, 3);
    auto set = oracle::random_subset(rng, 20, 20);
    CHECK(verify_sde(p, set).holds);
  }
}

TEST_CASE("random polynomials") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t vars = 1 + trial % 3;
    const int degree = 1 + trial % 5;
    auto p = random_polynomial(rng, vars, degree);
    CHECK_FALSE(p.is_zero());
    CHECK(p.variables() == vars);
    CHECK(p.degree() <= degree);
  }
}

TEST_CASE("layer-cake verdicts") {
  // Indicator input: a single level, and T(a) <= C ||a||_2 with C its own ratio.
  auto indicator = ind(6, {-5, -2, 0, 1, 4});
  const double c = indicator_ratio(indicator, kCubicLinear, 3);
  auto v = layer_cake_extend(indicator, kCubicLinear, 3, c);
  CHECK(v.holds);
  CHECK_FALSE(v.vacuous);
  CHECK(v.extras["levels"].size() == 1);

  using W = std::complex<double>;
  auto two = WeightedSequence::weighted(8, {{-7, W(1, 0)}, {-1, W(0, 1)}, {2, W(0.5, 0)}, {5, W(0, -0.5)}});
  double cmax = 0;
  for (auto subset : {std::vector<std::int64_t>{-7, -1}, std::vector<std::int64_t>{2, 5},
                      std::vector<std::int64_t>{-7, -1, 2, 5}}) {
    cmax = std::max(cmax, indicator_ratio(two.indicator_of(subset), kCubicLinear, 2));
  }
  auto w = layer_cake_extend(two, kCubicLinear, 2, cmax);
  CHECK(w.holds);
  CHECK_FALSE(w.vacuous);
  CHECK(w.extras["levels"].size() == 2);
  CHECK(w.slack > 0);

  auto zero = layer_cake_extend(WeightedSequence::weighted(4, {}), kCubicLinear, 3, 1.0);
  CHECK(zero.holds);
  CHECK(zero.lhs == "0.0");

  // A constant below the level-set ratios makes the check vacuous.
  auto vac = layer_cake_extend(two, kCubicLinear, 2, 0.1);
  CHECK(vac.vacuous);
}

TEST_CASE("verdict serialisation is reproducible") {
  auto a = verify_c2_zero(ind(4, {-3, 0, 2, 4}), kPhi).to_json().dump();
  auto b = verify_c2_zero(ind(4, {-3, 0, 2, 4}), kPhi).to_json().dump();
  CHECK(a == b);
  CHECK(instance_hash("abc") == instance_hash("abc"));
  CHECK(instance_hash("abc") != instance_hash("abd"));
  CHECK(instance_hash("").size() == 16);
  CHECK(instance_hash("") == "cbf29ce484222325");
}
