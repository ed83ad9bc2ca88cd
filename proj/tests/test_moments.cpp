#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rlab/errors.hpp"
#include "rlab/moments.hpp"

using namespace rlab;

namespace {

const CurveSystem kCubicLinear = CurveSystem::parse("x^3, x");
const CurveSystem kCube = CurveSystem::parse("x^3");
const CurveSystem kLinear = CurveSystem::parse("x");
const Polynomial kPhi = Polynomial::parse("x^3");

WeightedSequence ind(std::int64_t n, std::vector<std::int64_t> pts) { return WeightedSequence::indicator(n, pts); }

}  // namespace

TEST_CASE("moment examples") {
  for (std::size_t s = 1; s <= 5; ++s) CHECK(*even_moment(ind(3, {0}), kCubicLinear, s).exact == 1);
  CHECK(*even_moment(ind(2, {1, 2}), kCubicLinear, 2).exact == 6);
  CHECK(*even_moment(ind(1, {-1, 0, 1}), kCubicLinear, 5).exact ==
        oracle::moment({-1, 0, 1}, oracle::cubic_linear, 5));
  CHECK(*even_moment(ind(4, {}), kCubicLinear, 3).exact == 0);
  CHECK_THROWS_AS(even_moment(ind(2, {1}), kCubicLinear, 0), InvalidArgument);
}

TEST_CASE("Parseval: s = 1 gives A") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = oracle::random_subset(rng, 30, rng() % 61);
    CHECK(*even_moment(ind(30, pts), kCubicLinear, 1).exact == static_cast<i128>(pts.size()));
    CHECK(*even_moment(ind(30, pts), kCube, 1).exact == static_cast<i128>(pts.size()));
  }
}

TEST_CASE("moments match enumeration on small sets") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    auto pts = oracle::random_subset(rng, 4, 1 + rng() % 4);
    for (std::size_t s = 2; s <= 4; ++s) {
      CHECK(*even_moment(ind(4, pts), kCubicLinear, s).exact == oracle::moment(pts, oracle::cubic_linear, s));
    }
  }
}

TEST_CASE("univariate engines agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 12);
    auto pts = oracle::random_subset(rng, n, 1 + rng() % (2 * n + 1));
    auto seq = ind(n, pts);
    const std::size_t s = 1 + rng() % 4;
    const CurveSystem curve = trial % 3 == 0 ? CurveSystem::parse("x^2") : kCube;
    ComputeOptions small;
    small.window_entries = 1 + rng() % 500;  // forces many windows
    auto sparse = even_moment(seq, curve, s, {}, MomentEngine::sparse);
    auto sorted = even_moment(seq, curve, s, {}, MomentEngine::sorted_multisets);
    auto dense = even_moment(seq, curve, s, {}, MomentEngine::dense_window);
    auto windowed = even_moment(seq, curve, s, small, MomentEngine::dense_window);
    CHECK(*sparse.exact == *sorted.exact);
    CHECK(*sparse.exact == *dense.exact);
    CHECK(*sparse.exact == *windowed.exact);
    CHECK(sorted.engine == MomentEngine::sorted_multisets);
  }
  // Enumeration oracle on one case with repeated values.
  auto pts = oracle::interval(-3, 3);
  CHECK(*even_moment(ind(3, pts), CurveSystem::parse("x^2"), 3, {}, MomentEngine::dense_window).exact ==
        oracle::moment(pts, [](std::int64_t x) { return oracle::Point{x * x, 0, 0}; }, 3));
}

TEST_CASE("engine names and automatic choice") {
  for (auto e : {MomentEngine::automatic, MomentEngine::sparse, MomentEngine::sorted_multisets,
                 MomentEngine::dense_window}) {
    CHECK(parse_engine(to_string(e)) == e);
  }
  CHECK_THROWS_AS(parse_engine("fft"), InvalidArgument);
  auto full = ind(64, oracle::interval(-64, 64));
  CHECK(choose_engine(full, kCubicLinear, 3, {}) == MomentEngine::sparse);
  CHECK(choose_engine(full, kCube, 4, {}) == MomentEngine::dense_window);
  CHECK(choose_engine(full, kCube, 2, {}) == MomentEngine::sorted_multisets);
  CHECK_THROWS_AS(even_moment(full, kCubicLinear, 2, {}, MomentEngine::dense_window), InvalidArgument);
}

TEST_CASE("weighted moments match enumeration") {
  using W = std::complex<double>;
  std::vector<std::pair<std::int64_t, W>> w = {{-2, W(0.5, 1)}, {0, W(-1, 0.25)}, {1, W(2, 0)}};
  auto seq = WeightedSequence::weighted(2, w);
  for (std::size_t s = 1; s <= 3; ++s) {
    auto got = even_moment(seq, kCubicLinear, s);
    CHECK_FALSE(got.exact.has_value());
    auto want = oracle::weighted_moment(w, oracle::cubic_linear, s);
    CHECK(got.value == doctest::Approx(want.real()).epsilon(1e-12));
    CHECK(std::abs(want.imag()) < 1e-9);
  }
  CHECK_THROWS_AS(even_moment(seq, kCube, 2, {}, MomentEngine::sorted_multisets), InvalidArgument);
}

TEST_CASE("univariate representation counts") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = oracle::random_subset(rng, 8, 1 + rng() % 8);
    const std::size_t s = 1 + rng() % 3;
    auto got = univariate_rep(ind(8, pts), kPhi, s);
    auto want = oracle::univariate_rep(pts, oracle::cube, s);
    CHECK(got == std::vector<std::pair<std::int64_t, std::int64_t>>(want.begin(), want.end()));
  }
}

TEST_CASE("c-table examples") {
  auto c2 = c_table(ind(2, {1, 2}), kPhi, 2, CFlavor::constrained);
  CHECK(c2.entries() == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 6}});
  auto c1 = c_table(ind(1, {0, 1}), kPhi, 1, CFlavor::constrained);
  CHECK(c1.entries() == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 2}});
  CHECK(c_table(ind(3, {}), kPhi, 2, CFlavor::constrained).entries().empty());
  for (std::size_t t = 1; t <= 3; ++t) {
    CHECK(c_table(ind(3, {2}), kPhi, t, CFlavor::constrained).at(0) == 1);
    CHECK(c_table(ind(3, {2}), kPhi, t, CFlavor::unconstrained).at(0) == 1);
  }
  CHECK(c2.at(5) == 0);
  CHECK(c2.max_nonzero() == 0);
}

TEST_CASE("c-tables match enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = oracle::random_subset(rng, 5, 1 + rng() % 6);
    for (std::size_t t = 1; t <= 3; ++t) {
      if (t == 3 && pts.size() > 5) continue;
      for (bool constrained : {true, false}) {
        auto got = c_table(ind(5, pts), kPhi, t, constrained ? CFlavor::constrained : CFlavor::unconstrained);
        auto want = oracle::c_table(pts, oracle::cube, t, constrained);
        CHECK(got.entries() == std::vector<std::pair<std::int64_t, std::int64_t>>(want.begin(), want.end()));
      }
    }
  }
}

TEST_CASE("c-table symmetry and mass") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 10);
    auto pts = oracle::random_subset(rng, n, 1 + rng() % (2 * n + 1));
    auto seq = ind(n, pts);
    const i128 a = static_cast<i128>(pts.size());
    for (std::size_t t = 1; t <= 3; ++t) {
      auto c = c_table(seq, kPhi, t, CFlavor::constrained);
      auto cp = c_table(seq, kPhi, t, CFlavor::unconstrained);
      for (const auto& [l, v] : c.entries()) {
        CHECK(v > 0);
        CHECK(c.at(-l) == v);
      }
      for (const auto& [l, v] : cp.entries()) CHECK(cp.at(-l) == v);
      // Constrained mass is the number of 2t-tuples with equal linear sums:
      // the 2t-th moment of the linear curve.
      CHECK(c.total() == *even_moment(seq, kLinear, t).exact);
      CHECK(cp.total() == checked_pow(a, static_cast<unsigned>(2 * t)));
    }
  }
}

TEST_CASE("adding a point never decreases moments or c-table mass") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    const std::int64_t n = 6;
    auto pts = oracle::random_subset(rng, n, 1 + rng() % 8);
    auto bigger = pts;
    std::int64_t extra = static_cast<std::int64_t>(rng() % 13) - 6;
    if (std::find(pts.begin(), pts.end(), extra) != pts.end()) continue;
    bigger.push_back(extra);
    for (std::size_t s = 1; s <= 3; ++s) {
      CHECK(*even_moment(ind(n, pts), kCubicLinear, s).exact <= *even_moment(ind(n, bigger), kCubicLinear, s).exact);
      CHECK(*even_moment(ind(n, pts), kCube, s).exact <= *even_moment(ind(n, bigger), kCube, s).exact);
      CHECK(c_table(ind(n, pts), kPhi, s, CFlavor::constrained).total() <=
            c_table(ind(n, bigger), kPhi, s, CFlavor::constrained).total());
    }
  }
}

TEST_CASE("memory budget applies to the multiset engine") {
  ComputeOptions tight;
  tight.memory_budget = 1 << 12;
  CHECK_THROWS_AS(even_moment(ind(40, oracle::interval(-40, 40)), kCube, 2, tight, MomentEngine::sorted_multisets),
                  ResourceError);
}
