#include "rlab/scan.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#include "rlab/bounds.hpp"
#include "rlab/errors.hpp"

namespace rlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

LemmaVerdict tenth_bound_verdict(const WeightedSequence& seq, const Polynomial& phi, const ComputeOptions& options) {
  LemmaVerdict v;
  v.id = "bound-10";
  v.instance = "phi=" + phi.to_string() + " N=" + std::to_string(seq.radius()) + " set=" + set_to_json(seq).dump();
  const CurveSystem curve({phi, Polynomial::variable(0, 1)});
  const i128 moment = seq.empty() ? 0 : *even_moment(seq, curve, 5, options).exact;
  const TenthMomentBound b = tenth_moment_bound(seq, phi, options);
  v.lhs = to_string(moment);
  v.rhs = to_string(b.bound);
  v.slack = static_cast<double>(b.bound) - static_cast<double>(moment);
  v.holds = moment <= b.bound;
  v.extras["factor"] = to_string(b.factor);
  v.extras["zero_term"] = to_string(b.zero_term);
  v.extras["nonzero_total"] = to_string(b.nonzero_total);
  v.extras["ratio"] = b.bound == 0 ? 0.0 : static_cast<double>(moment) / static_cast<double>(b.bound);
  if (!v.holds) v.witness = set_to_json(seq);
  return v;
}

LemmaVerdict eighth_bound_verdict(const WeightedSequence& seq, const Polynomial& phi, const ComputeOptions& options) {
  LemmaVerdict v;
  v.id = "bound-8";
  v.instance = "phi=" + phi.to_string() + " N=" + std::to_string(seq.radius()) + " set=" + set_to_json(seq).dump();
  const i128 moment = seq.empty() ? 0 : *even_moment(seq, CurveSystem({phi}), 4, options).exact;
  const EighthMomentBound b = eighth_moment_bound(seq, phi, options);
  v.lhs = to_string(moment);
  v.rhs = to_string(b.full_bound);
  v.slack = static_cast<double>(b.full_bound) - static_cast<double>(moment);
  v.holds = moment <= b.full_bound && b.full_bound <= b.refined_bound;
  v.extras["refined_bound"] = to_string(b.refined_bound);
  v.extras["c2_zero"] = b.c2_zero;
  v.extras["c2_prime_zero"] = b.c2_prime_zero;
  v.extras["c2_max_nonzero"] = b.c2_max_nonzero;
  if (!v.holds) v.witness = set_to_json(seq);
  return v;
}

LemmaVerdict divisor_verdict(const WeightedSequence& seq, const Polynomial& phi, std::mt19937_64& rng,
                             const ComputeOptions& options) {
  std::int64_t l = 0;
  if (!seq.empty() && rng() % 2 == 0) {
    auto c2 = c_table(seq, phi, 2, CFlavor::constrained, options);
    std::vector<std::int64_t> nonzero;
    for (const auto& [key, c] : c2.entries()) {
      if (key != 0) nonzero.push_back(key);
    }
    if (!nonzero.empty()) l = nonzero[rng() % nonzero.size()];
  }
  if (l == 0) {
    const auto r = seq.radius() + 1;
    l = static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(3 * r * r * r));
    if (rng() % 2 == 0) l = -l;
  }
  const DivisorCertificate cert = c2_nonzero_divisor_check(seq, phi, l);
  LemmaVerdict v;
  v.id = "c2-divisor";
  v.instance = "phi=" + phi.to_string() + " l=" + std::to_string(l) + " N=" + std::to_string(seq.radius()) +
               " set=" + set_to_json(seq).dump();
  v.lhs = to_string(cert.count);
  v.rhs = to_string(cert.ceiling);
  v.slack = static_cast<double>(cert.ceiling) - static_cast<double>(cert.count);
  v.holds = cert.holds;
  v.extras["route"] = cert.route;
  v.extras["structural"] = to_string(cert.structural);
  v.extras["divisible"] = cert.divisible;
  v.extras["tau3"] = cert.tau3;
  v.extras["triples"] = cert.triples;
  if (!v.holds) v.witness = nlohmann::json{{"l", l}, {"set", set_to_json(seq)}};
  return v;
}

LemmaVerdict layer_cake_verdict(const VerifyConfig& config, std::mt19937_64& rng) {
  const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(config.max_radius));
  std::vector<std::pair<std::int64_t, std::complex<double>>> entries;
  for (std::int64_t x = -n; x <= n; ++x) {
    if (rng() % 2 != 0) continue;
    const double magnitude = std::ldexp(0.5 + 0.5 * uniform01(rng), -static_cast<int>(rng() % 4));
    const double angle = 2 * std::numbers::pi * uniform01(rng);
    entries.emplace_back(x, std::polar(magnitude, angle));
  }
  const auto seq = WeightedSequence::weighted(n, std::move(entries));
  const CurveSystem curve = CurveSystem::parse("x^3, x");

  double c = 0;
  for (std::size_t i = 0; i < config.layer_subsets && !seq.empty(); ++i) {
    const double density = 0.05 + 0.95 * uniform01(rng);
    std::vector<std::int64_t> subset;
    for (auto x : seq.support()) {
      if (uniform01(rng) < density) subset.push_back(x);
    }
    if (subset.empty()) continue;
    c = std::max(c, indicator_ratio(seq.indicator_of(subset), curve, config.layer_fold, config.options));
  }
  if (c == 0) c = 1;
  LemmaVerdict v = layer_cake_extend(seq, curve, config.layer_fold, c, config.options);
  v.extras["C_subsets"] = config.layer_subsets;
  return v;
}

}  // namespace

void ScanConfig::validate() const {
  if (radii.empty()) throw InvalidArgument("the N list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 1) throw InvalidArgument("N must be positive");
    if (i > 0 && radii[i] <= radii[i - 1]) throw InvalidArgument("the N list must be strictly ascending");
  }
  if (folds.empty()) throw InvalidArgument("the s list is empty");
  for (auto s : folds) {
    if (s < 1) throw InvalidArgument("s must be at least 1");
  }
  if (options.memory_budget == 0) throw InvalidArgument("the memory budget must be positive");
  if (!(tolerance >= 0)) throw InvalidArgument("the tolerance must be non-negative");
}

namespace {

struct PointOutcome {
  MomentReport report;
  std::optional<std::string> failure;
};

PointOutcome scan_point(const ScanConfig& config, const CurveSystem& curve, const SetSpec& spec, std::int64_t n,
                        std::size_t s, const ComputeOptions& options) {
  const auto start = Clock::now();
  const GeneratedSet set = make_set(spec, n);
  PointOutcome out;
  MomentReport& report = out.report;
  report.radius = n;
  report.set = set.descriptor;
  report.curve = curve.to_string();
  report.p = 2 * s;
  report.cardinality = set.sequence.cardinality();
  try {
    const MomentValue m = even_moment(set.sequence, curve, s, options, config.engine);
    report.exact = m.exact;
    report.moment = m.value;
    report.engine = to_string(m.engine);
  } catch (const ResourceError& e) {
    out.failure = e.what();
    return out;
  }
  report.bound = normalizing_bound(n, report.cardinality, s, curve.degree_sum());
  report.ratio = report.moment / report.bound;
  report.wall_seconds = seconds_since(start);
  return out;
}

}  // namespace

ScanResult run_scan(const ScanConfig& config) {
  config.validate();
  const CurveSystem curve = CurveSystem::parse(config.curve);
  SetSpec spec = config.set;
  if (spec.kind == SetSpec::Kind::random) spec.seed = config.seed;
  JsonLinesWriter out(config.output, true);
  ScanResult result;

  // Concurrent points split the budget evenly; results are emitted in scan order.
  const std::size_t batch = std::max<std::size_t>(1, config.parallel_points);
  ComputeOptions options = config.options;
  options.memory_budget = std::max<std::uint64_t>(1, options.memory_budget / batch);

  for (auto s : config.folds) {
    std::vector<PointOutcome> points;
    for (std::size_t i = 0; i < config.radii.size(); i += batch) {
      const std::size_t stop = std::min(config.radii.size(), i + batch);
      if (stop - i == 1) {
        points.push_back(scan_point(config, curve, spec, config.radii[i], s, options));
        continue;
      }
      std::vector<std::future<PointOutcome>> running;
      for (std::size_t j = i; j < stop; ++j) {
        running.push_back(std::async(std::launch::async, scan_point, std::cref(config), std::cref(curve),
                                     std::cref(spec), config.radii[j], s, std::cref(options)));
      }
      for (auto& f : running) points.push_back(f.get());
    }

    std::vector<double> xs, ys, ratios;
    for (auto& point : points) {
      const MomentReport& report = point.report;
      if (point.failure) {
        result.failures.push_back({report.radius, s, *point.failure});
        out.write({{"kind", "failure"}, {"N", report.radius}, {"p", 2 * s}, {"message", *point.failure}});
        continue;
      }
      out.write(report.to_json());
      result.reports.push_back(report);
      if (report.moment > 0) {
        xs.push_back(std::log(static_cast<double>(2 * report.radius + 1)));
        ys.push_back(std::log(report.moment));
        ratios.push_back(std::log(report.ratio));
      }
    }
    if (xs.size() >= 2) {
      ScanFit fit;
      fit.s = s;
      fit.moment = fit_slope(xs, ys, conjectured_slope(s, curve.degree_sum()), config.tolerance);
      fit.ratio = fit_slope(xs, ratios);
      auto line = fit.moment.to_json();
      line["p"] = 2 * s;
      line["ratio_slope"] = fit.ratio.slope;
      line["ratio_residual_max"] = fit.ratio.residual_max;
      out.write(line);
      result.fits.push_back(std::move(fit));
    }
  }
  return result;
}

const std::vector<std::string>& known_lemma_ids() {
  static const std::vector<std::string> ids = {"cubic-identity", "c2-zero",    "c3-zero",  "sde",
                                               "layer-cake",     "c2-divisor", "bound-10", "bound-8"};
  return ids;
}

GeneratedSet trial_set(std::uint64_t seed, std::size_t trial, std::int64_t max_radius) {
  if (max_radius < 1) throw InvalidArgument("max radius must be positive");
  static constexpr double kDensities[] = {0.2, 0.5, 1.0};
  auto rng = trial_rng(seed, trial, 0);
  const auto n = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_radius));
  return make_set(SetSpec::random(kDensities[trial % 3], rng()), n);
}

VerifySummary run_verify(const VerifyConfig& config) {
  for (const auto& id : config.suite) {
    if (std::find(known_lemma_ids().begin(), known_lemma_ids().end(), id) == known_lemma_ids().end()) {
      throw InvalidArgument("unknown lemma id '" + id + "'");
    }
  }
  const Polynomial phi = Polynomial::parse(config.phi);
  JsonLinesWriter out(config.output, true);
  VerifySummary summary;

  for (std::size_t index = 0; index < config.suite.size(); ++index) {
    const std::string& id = config.suite[index];
    const std::size_t trials = id == "cubic-identity" ? 1 : config.trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const auto start = Clock::now();
      auto rng = trial_rng(config.seed, trial, 1 + index);
      LemmaVerdict v;
      if (id == "cubic-identity") {
        v = verify_cubic_identity(-20, 20);
      } else if (id == "sde") {
        const std::size_t vars = 1 + rng() % 3;
        const int degree = 1 + static_cast<int>(rng() % 5);
        const Polynomial p = random_polynomial(rng, vars, degree);
        std::vector<std::int64_t> pool;
        for (std::int64_t x = -20; x <= 20; ++x) pool.push_back(x);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(1 + rng() % 30);
        std::sort(pool.begin(), pool.end());
        v = verify_sde(p, pool);
      } else if (id == "layer-cake") {
        v = layer_cake_verdict(config, rng);
      } else {
        const GeneratedSet set = trial_set(config.seed, trial, config.max_radius);
        if (id == "c2-zero") {
          v = verify_c2_zero(set.sequence, phi, config.options);
        } else if (id == "c3-zero") {
          v = verify_c3_zero(set.sequence, config.options);
        } else if (id == "c2-divisor") {
          v = divisor_verdict(set.sequence, phi, rng, config.options);
        } else if (id == "bound-10") {
          v = tenth_bound_verdict(set.sequence, phi, config.options);
        } else {
          v = eighth_bound_verdict(set.sequence, phi, config.options);
        }
      }
      if (!v.holds) ++summary.failed;
      if (v.vacuous) ++summary.vacuous;
      auto line = v.to_json();
      line["trial"] = trial;
      line[kTimingField] = seconds_since(start);
      out.write(line);
      summary.verdicts.push_back(std::move(v));
    }
  }
  return summary;
}

}  // namespace rlab
