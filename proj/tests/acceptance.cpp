// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every tolerance used below is pinned in this file.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rlab/divisor.hpp"
#include "rlab/extension.hpp"
#include "rlab/scan.hpp"

using namespace rlab;

namespace {

// Scaling checks.
constexpr double kSixthSlopeLo = 3.0, kSixthSlopeHi = 3.3;
constexpr double kTenthSlopeMax = 6.4;
// "Bounded" ratio: log-log slope of the ratio at most this, and the largest
// ratio in the upper half of the scan no more than kTailGrowth times the
// largest in the lower half.
constexpr double kRatioSlopeMax = 0.15;
constexpr double kTailGrowth = 1.05;
// Monte Carlo agreement in standard errors.
constexpr double kMonteCarloSigmas = 4.0;
constexpr std::uint64_t kMonteCarloSamples = 1'000'000;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool bounded(const std::vector<double>& xs, const std::vector<double>& ratios, double* slope_out) {
  std::vector<double> ys;
  for (double r : ratios) ys.push_back(std::log(r));
  const double slope = fit_slope(xs, ys).slope;
  *slope_out = slope;
  const std::size_t half = ratios.size() / 2;
  double head = 0, tail = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    double& side = i < half ? head : tail;
    side = std::max(side, ratios[i]);
  }
  return slope <= kRatioSlopeMax && tail <= kTailGrowth * head;
}

std::string strip_timing(const std::string& path) {
  std::ifstream in(path);
  std::string line, out;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    j.erase(kTimingField);
    out += j.dump() + "\n";
  }
  return out;
}

ScanResult scan(const char* curve, std::vector<std::int64_t> radii, std::size_t s, const std::string& output = {}) {
  ScanConfig config;
  config.curve = curve;
  config.radii = std::move(radii);
  config.folds = {s};
  config.output = output;
  return run_scan(config);
}

VerifyConfig tenth_suite(const std::string& output) {
  VerifyConfig config;
  config.suite = {"bound-10", "c2-zero"};
  config.seed = kSeed;
  config.trials = 200;
  config.max_radius = 24;
  config.output = output;
  return config;
}

Outcome ac1() {
  const auto start = Clock::now();
  const CurveSystem curve = CurveSystem::parse("x^3, x");
  std::size_t sets = 0, mismatches = 0;
  for (unsigned mask = 0; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) > 4) continue;
    std::vector<std::int64_t> pts;
    for (int b = 0; b < 9; ++b) {
      if (mask & (1u << b)) pts.push_back(b - 4);
    }
    ++sets;
    const auto seq = WeightedSequence::indicator(4, pts);
    for (std::size_t s = 2; s <= 5; ++s) {
      const auto got = even_moment(seq, curve, s).exact;
      if (!got || *got != static_cast<i128>(oracle::moment(pts, oracle::cubic_linear, s))) ++mismatches;
    }
  }
  const double secs = since(start);
  return {mismatches == 0 && secs < 60, fmt("%zu sets x 4 folds, %zu mismatches, %.1fs", sets, mismatches, secs)};
}

Outcome ac2_ac3(Outcome* ac3) {
  const auto start = Clock::now();
  const auto summary = run_verify(tenth_suite({}));
  const double secs = since(start);
  std::size_t tenth_bad = 0, c2_bad = 0;
  for (const auto& v : summary.verdicts) (v.id == "bound-10" ? tenth_bad : c2_bad) += v.holds ? 0 : 1;
  *ac3 = {c2_bad == 0, fmt("200 sets, %zu violations of c2(0) <= 3A^2", c2_bad)};
  return {tenth_bad == 0 && secs < 1800, fmt("200 sets, %zu violations, %.1fs (both suites)", tenth_bad, secs)};
}

Outcome ac4() {
  VerifyConfig config;
  config.suite = {"c3-zero"};
  config.seed = kSeed;
  config.trials = 50;
  config.max_radius = 9;  // A <= 19
  const auto summary = run_verify(config);
  std::size_t bad = 0, partition_bad = 0;
  std::size_t max_a = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const auto set = trial_set(config.seed, t, config.max_radius);
    max_a = std::max(max_a, set.sequence.cardinality());
    const auto r = c3_zero_recount(set.sequence);
    if (r.vanishing + r.nonvanishing != r.exact) ++partition_bad;
    if (r.exact > r.bound) ++bad;
  }
  bad += summary.failed;
  return {bad == 0 && partition_bad == 0 && max_a <= 20,
          fmt("50 sets (max A = %zu), %zu partition mismatches, %zu bound violations", max_a, partition_bad, bad)};
}

Outcome ac5() {
  bool ok = divisor(12, 2) == 6 && divisor(8, 3) == 10;
  for (unsigned k = 1; k <= 6; ++k) ok = ok && divisor(1, k) == 1;
  std::size_t mismatches = 0;
  for (unsigned k : {2u, 3u}) {
    const auto sieve = divisor_sieve(100000, k);
    for (std::uint64_t n = 1; n <= 100000; ++n) mismatches += sieve[n] != divisor(n, k);
  }
  return {ok && mismatches == 0, fmt("fixed values %s, %zu sieve mismatches up to 1e5", ok ? "ok" : "wrong", mismatches)};
}

Outcome ac6() {
  VerifyConfig config;
  config.suite = {"sde"};
  config.seed = kSeed;
  config.trials = 100;
  const auto summary = run_verify(config);
  return {summary.failed == 0 && summary.verdicts.size() == 100, fmt("100 polynomials, %zu violations", summary.failed)};
}

Outcome ac7() {
  const auto r = scan("x^3, x", {8, 16, 32, 64, 128}, 3);
  const double slope = r.fits.at(0).moment.slope;
  return {r.failures.empty() && slope >= kSixthSlopeLo && slope <= kSixthSlopeHi,
          fmt("slope %.4f, window [%.1f, %.1f]", slope, kSixthSlopeLo, kSixthSlopeHi)};
}

Outcome ac8(const std::string& output) {
  const auto start = Clock::now();
  const auto r = scan("x^3, x", {4, 8, 12, 16, 20, 24}, 5, output);
  const double secs = since(start);
  const auto& fit = r.fits.at(0);
  std::vector<double> ratios;
  for (const auto& p : r.reports) ratios.push_back(p.ratio);
  double ratio_slope = 0;
  const bool ok_ratio = bounded(fit.moment.xs, ratios, &ratio_slope);
  return {r.failures.empty() && fit.moment.slope <= kTenthSlopeMax && ok_ratio && secs < 7200,
          fmt("slope %.4f (max %.1f), ratio/(N A^5) slope %.4f, %.1fs", fit.moment.slope, kTenthSlopeMax,
              ratio_slope, secs)};
}

Outcome ac9() {
  const auto r = scan("x^3", {8, 16, 32, 64, 128, 256, 512}, 4);
  std::vector<double> ratios;
  for (const auto& p : r.reports) ratios.push_back(p.ratio);
  double ratio_slope = 0;
  const bool ok = r.failures.empty() && bounded(r.fits.at(0).moment.xs, ratios, &ratio_slope);
  return {ok, fmt("ratio/(N A^4) from %.3f to %.3f, slope %.4f", ratios.front(), ratios.back(), ratio_slope)};
}

Outcome ac10() {
  const auto r = scan("x^3", {8, 16, 32, 64, 128, 256, 512, 1024, 2000}, 2);
  std::vector<double> ratios;
  for (const auto& p : r.reports) {
    const double a = static_cast<double>(p.cardinality);
    ratios.push_back(p.moment / (a * a * std::pow(1 + std::log(static_cast<double>(p.radius)), 3)));
  }
  double ratio_slope = 0;
  const bool ok = r.failures.empty() && bounded(r.fits.at(0).moment.xs, ratios, &ratio_slope);
  return {ok, fmt("moment/(A^2 (1+log N)^3) from %.4f to %.4f, slope %.4f", ratios.front(), ratios.back(),
                  ratio_slope)};
}

Outcome ac11() {
  const CurveSystem curve = CurveSystem::parse("x^3, x");
  double worst = 0;
  for (std::size_t t = 0; t < 10; ++t) {
    const auto set = trial_set(kSeed, t, 16);
    const double exact = even_moment(set.sequence, curve, 5).value;
    const auto mc = monte_carlo_moment(set.sequence, curve, 10, kMonteCarloSamples, kSeed + t);
    const double z = mc.standard_error > 0 ? std::abs(mc.mean - exact) / mc.standard_error
                                           : (mc.mean == exact ? 0 : INFINITY);
    worst = std::max(worst, z);
  }
  return {worst <= kMonteCarloSigmas, fmt("10 sets, worst deviation %.2f standard errors", worst)};
}

Outcome ac12() {
  VerifyConfig config;
  config.suite = {"layer-cake"};
  config.seed = kSeed;
  config.trials = 50;
  config.max_radius = 24;
  const auto summary = run_verify(config);
  double min_slack = INFINITY;
  for (const auto& v : summary.verdicts) min_slack = std::min(min_slack, v.slack);
  return {summary.failed == 0 && summary.vacuous == 0,
          fmt("50 sequences, %zu failures, %zu vacuous, min slack %.3g", summary.failed, summary.vacuous, min_slack)};
}

Outcome ac13(const std::string& first_scan) {
  const auto dir = std::filesystem::current_path();
  const std::string v1 = (dir / "ac13_verify_1.jsonl").string(), v2 = (dir / "ac13_verify_2.jsonl").string();
  const std::string s2 = (dir / "ac13_scan_2.jsonl").string();
  run_verify(tenth_suite(v1));
  run_verify(tenth_suite(v2));
  scan("x^3, x", {4, 8, 12, 16, 20, 24}, 5, s2);
  const auto a = strip_timing(v1), b = strip_timing(v2);
  const auto c = strip_timing(first_scan), d = strip_timing(s2);
  const bool ok = !a.empty() && a == b && !c.empty() && c == d;
  return {ok, fmt("verify files %s, scan files %s", a == b ? "identical" : "differ", c == d ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::string scan_file = (std::filesystem::current_path() / "ac13_scan_1.jsonl").string();
  struct Row {
    const char* name;
    const char* title;
    std::function<Outcome()> run;
  };
  Outcome ac3;
  bool ac3_ready = false;
  const std::vector<Row> rows = {
      {"AC1", "oracle equivalence", ac1},
      {"AC2", "tenth moment bound", [&] { ac3_ready = true; return ac2_ac3(&ac3); }},
      {"AC3", "c2(0) <= 3A^2", [&] { return ac3_ready ? ac3 : Outcome{false, "not run"}; }},
      {"AC4", "c3(0) recount", ac4},
      {"AC5", "divisor functions", ac5},
      {"AC6", "zero counting bound", ac6},
      {"AC7", "sixth moment scaling", ac7},
      {"AC8", "tenth moment scaling", [&] { return ac8(scan_file); }},
      {"AC9", "univariate eighth moment", ac9},
      {"AC10", "univariate fourth moment", ac10},
      {"AC11", "Monte Carlo cross-check", ac11},
      {"AC12", "layer-cake extension", ac12},
      {"AC13", "determinism", [&] { return ac13(scan_file); }},
  };
  int failures = 0;
  for (const auto& row : rows) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = row.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%-5s %s  %-26s %s [%.1fs]\n", row.name, o.pass ? "PASS" : "FAIL", row.title, o.detail.c_str(),
                since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, rows.size());
  return failures == 0 ? 0 : 1;
}
