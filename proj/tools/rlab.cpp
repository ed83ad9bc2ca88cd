// rlab: exact moment, c-table, bound and lemma experiments from the command line.
//
// Exit status: 0 success, 1 a verdict failed, 2 resource or range limit, 3 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlab/bounds.hpp"
#include "rlab/divisor.hpp"
#include "rlab/errors.hpp"
#include "rlab/extension.hpp"
#include "rlab/lemmas.hpp"
#include "rlab/scan.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kResource = 2;
constexpr int kUsage = 3;

struct Common {
  std::uint64_t seed = 1;
  std::string mem_budget = "8G";
  std::string out;
  unsigned threads = 0;

  rlab::ComputeOptions options() const {
    rlab::ComputeOptions o;
    o.memory_budget = parse_bytes(mem_budget);
    o.threads = threads;
    return o;
  }

  static std::uint64_t parse_bytes(const std::string& text) {
    if (text.empty()) throw rlab::InvalidArgument("empty memory budget");
    std::uint64_t scale = 1;
    std::string digits = text;
    switch (std::toupper(static_cast<unsigned char>(text.back()))) {
      case 'K': scale = 1ULL << 10; digits.pop_back(); break;
      case 'M': scale = 1ULL << 20; digits.pop_back(); break;
      case 'G': scale = 1ULL << 30; digits.pop_back(); break;
      default: break;
    }
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != digits.size() || !(value > 0)) throw rlab::InvalidArgument("bad memory budget '" + text + "'");
    return static_cast<std::uint64_t>(value * static_cast<double>(scale));
  }
};

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw rlab::InvalidArgument("bad list entry '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

rlab::GeneratedSet build_set(const std::string& spec, std::int64_t radius, std::uint64_t seed) {
  auto set = rlab::make_set(rlab::SetSpec::parse(spec, seed), radius);
  if (set.empty) std::cerr << "note: the generated set is empty\n";
  return set;
}

struct MomentArgs {
  std::string curve = "x^3, x";
  std::string set = "full";
  std::int64_t radius = 0;
  std::size_t p = 0;
  std::string engine = "auto";
  std::uint64_t samples = 0;
  std::string table_out;
  std::string table_format = "csv";
  bool json = false;
};

int run_moment(const MomentArgs& args, const Common& common) {
  const auto start = std::chrono::steady_clock::now();
  const auto curve = rlab::CurveSystem::parse(args.curve);
  const auto set = build_set(args.set, args.radius, common.seed);
  const auto options = common.options();
  rlab::JsonLinesWriter out(common.out, false);

  if (args.samples > 0 || args.p % 2 == 1) {
    const std::uint64_t samples = args.samples > 0 ? args.samples : 1000000;
    auto est = rlab::monte_carlo_moment(set.sequence, curve, static_cast<double>(args.p), samples, common.seed,
                                        common.threads);
    nlohmann::json j{{"kind", "monte_carlo"}, {"N", args.radius},       {"set", set.descriptor},
                     {"curve", curve.to_string()}, {"p", args.p},       {"estimate", est.mean},
                     {"standard_error", est.standard_error}, {"samples", est.samples},
                     {rlab::kTimingField, seconds_since(start)}};
    out.write(j);
    if (args.json) {
      std::cout << j.dump() << "\n";
    } else {
      std::printf("%-6s %-28s %4s %22s %14s\n", "N", "set", "p", "estimate", "stderr");
      std::printf("%-6lld %-28s %4zu %22.10g %14.6g\n", static_cast<long long>(args.radius), set.descriptor.c_str(),
                  args.p, est.mean, est.standard_error);
    }
    return kOk;
  }

  const std::size_t s = args.p / 2;
  const auto value = rlab::even_moment(set.sequence, curve, s, options, rlab::parse_engine(args.engine));
  rlab::MomentReport report;
  report.radius = args.radius;
  report.set = set.descriptor;
  report.curve = curve.to_string();
  report.p = args.p;
  report.cardinality = set.sequence.cardinality();
  report.exact = value.exact;
  report.moment = value.value;
  report.bound = rlab::normalizing_bound(args.radius, report.cardinality, s, curve.degree_sum());
  report.ratio = report.moment / report.bound;
  report.engine = rlab::to_string(value.engine);

  if (!args.table_out.empty()) {
    std::ofstream file(args.table_out, std::ios::binary);
    if (!file) throw rlab::InvalidArgument("cannot open " + args.table_out);
    if (set.sequence.is_indicator()) {
      auto table = rlab::rep_counts(set.sequence, curve, s, options);
      args.table_format == "bin" ? rlab::write_binary(file, table) : rlab::write_csv(file, table);
    } else {
      auto table = rlab::rep_weights(set.sequence, curve, s, options);
      args.table_format == "bin" ? rlab::write_binary(file, table) : rlab::write_csv(file, table);
    }
  }
  report.wall_seconds = seconds_since(start);
  out.write(report.to_json());
  if (args.json) {
    std::cout << report.to_json().dump() << "\n";
  } else {
    std::printf("%-6s %-28s %-12s %4s %6s %26s %14s %8s\n", "N", "set", "curve", "p", "A", "moment", "ratio",
                "engine");
    std::printf("%-6lld %-28s %-12s %4zu %6zu %26s %14.6g %8s\n", static_cast<long long>(args.radius),
                report.set.c_str(), report.curve.c_str(), args.p, report.cardinality,
                report.exact ? rlab::to_string(*report.exact).c_str() : std::to_string(report.moment).c_str(),
                report.ratio, report.engine.c_str());
  }
  return kOk;
}

struct CTableArgs {
  std::string phi = "x^3";
  std::string set = "full";
  std::int64_t radius = 0;
  std::size_t t = 2;
  std::string flavor = "constrained";
  std::string format = "text";
};

int run_ctable(const CTableArgs& args, const Common& common) {
  const auto phi = rlab::Polynomial::parse(args.phi);
  const auto set = build_set(args.set, args.radius, common.seed);
  rlab::CFlavor flavor;
  if (args.flavor == "constrained") {
    flavor = rlab::CFlavor::constrained;
  } else if (args.flavor == "unconstrained") {
    flavor = rlab::CFlavor::unconstrained;
  } else {
    throw rlab::InvalidArgument("flavor is constrained or unconstrained");
  }
  const auto table = rlab::c_table(set.sequence, phi, args.t, flavor, common.options());

  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) throw rlab::InvalidArgument("cannot open " + common.out);
  }
  std::ostream& os = common.out.empty() ? std::cout : file;
  if (args.format == "csv") {
    os << "l,count\n";
    for (const auto& [l, c] : table.entries()) os << l << "," << c << "\n";
  } else if (args.format == "json") {
    nlohmann::json j{{"t", args.t}, {"flavor", args.flavor}, {"N", args.radius}, {"set", set.descriptor},
                     {"phi", phi.to_string()}, {"total", rlab::to_string(table.total())}};
    j["entries"] = table.entries();
    os << j.dump() << "\n";
  } else {
    os << "# c_" << args.t << (flavor == rlab::CFlavor::unconstrained ? "'" : "") << "(l)  phi=" << phi.to_string()
       << "  set=" << set.descriptor << "  N=" << args.radius << "  entries=" << table.entries().size()
       << "  total=" << rlab::to_string(table.total()) << "\n";
    for (const auto& [l, c] : table.entries()) os << std::setw(16) << l << " " << std::setw(16) << c << "\n";
  }
  return kOk;
}

struct BoundArgs {
  std::string phi = "x^3";
  std::string set = "full";
  std::int64_t radius = 0;
  int kind = 10;
  bool check = false;
};

int run_bound(const BoundArgs& args, const Common& common) {
  const auto phi = rlab::Polynomial::parse(args.phi);
  const auto set = build_set(args.set, args.radius, common.seed);
  const auto options = common.options();
  nlohmann::json j{{"kind", "bound"}, {"p", args.kind}, {"N", args.radius}, {"set", set.descriptor},
                   {"phi", phi.to_string()}, {"A", set.sequence.cardinality()}};
  rlab::i128 limit = 0;
  if (args.kind == 10) {
    const auto b = rlab::tenth_moment_bound(set.sequence, phi, options);
    j["factor"] = rlab::to_string(b.factor);
    j["zero_term"] = rlab::to_string(b.zero_term);
    j["nonzero_total"] = rlab::to_string(b.nonzero_total);
    j["bound"] = rlab::to_string(b.bound);
    limit = b.bound;
  } else if (args.kind == 8) {
    const auto b = rlab::eighth_moment_bound(set.sequence, phi, options);
    j["factor"] = rlab::to_string(b.factor);
    j["full_bound"] = rlab::to_string(b.full_bound);
    j["refined_bound"] = rlab::to_string(b.refined_bound);
    j["c2_zero"] = b.c2_zero;
    j["c2_prime_zero"] = b.c2_prime_zero;
    j["c2_max_nonzero"] = b.c2_max_nonzero;
    limit = b.full_bound;
  } else {
    throw rlab::InvalidArgument("--p is 8 or 10");
  }
  bool holds = true;
  if (args.check) {
    const auto curve = args.kind == 10 ? rlab::CurveSystem({phi, rlab::Polynomial::variable(0, 1)})
                                       : rlab::CurveSystem({phi});
    const auto moment = set.sequence.empty() ? rlab::i128{0}
                                             : *rlab::even_moment(set.sequence, curve, args.kind / 2, options).exact;
    j["moment"] = rlab::to_string(moment);
    holds = moment <= limit;
    j["holds"] = holds;
  }
  rlab::JsonLinesWriter(common.out, false).write(j);
  for (const auto& [key, value] : j.items()) {
    std::printf("%-16s %s\n", key.c_str(), value.is_string() ? value.get<std::string>().c_str() : value.dump().c_str());
  }
  return holds ? kOk : kVerdictFailed;
}

struct VerifyArgs {
  std::string suite = "cubic-identity";
  std::size_t trials = 50;
  std::int64_t max_radius = 30;
  std::string phi = "x^3";
  std::size_t layer_fold = 3;
};

int run_verify_cmd(const VerifyArgs& args, const Common& common) {
  rlab::VerifyConfig config;
  config.suite = split_names(args.suite);
  if (config.suite.size() == 1 && config.suite[0] == "all") config.suite = rlab::known_lemma_ids();
  config.seed = common.seed;
  config.trials = args.trials;
  config.max_radius = args.max_radius;
  config.phi = args.phi;
  config.layer_fold = args.layer_fold;
  config.options = common.options();
  config.output = common.out;
  const auto summary = rlab::run_verify(config);

  std::printf("%-16s %8s %8s %8s\n", "lemma", "trials", "false", "vacuous");
  for (const auto& id : config.suite) {
    std::size_t n = 0, failed = 0, vacuous = 0;
    for (const auto& v : summary.verdicts) {
      if (v.id != id) continue;
      ++n;
      failed += v.holds ? 0 : 1;
      vacuous += v.vacuous ? 1 : 0;
    }
    std::printf("%-16s %8zu %8zu %8zu\n", id.c_str(), n, failed, vacuous);
  }
  for (const auto& v : summary.verdicts) {
    if (!v.holds) std::printf("FALSE %s: %s (lhs %s, rhs %s)\n", v.id.c_str(), v.instance.c_str(), v.lhs.c_str(),
                              v.rhs.c_str());
  }
  return summary.failed == 0 ? kOk : kVerdictFailed;
}

struct ScanArgs {
  std::string curve = "x^3, x";
  std::string set = "full";
  std::string radii;
  std::string folds = "1";
  double tolerance = 0.3;
  std::string engine = "auto";
  std::size_t parallel_points = 1;
};

int run_scan_cmd(const ScanArgs& args, const Common& common) {
  rlab::ScanConfig config;
  config.curve = args.curve;
  config.set = rlab::SetSpec::parse(args.set, common.seed);
  config.radii = parse_list<std::int64_t>(args.radii);
  config.folds = parse_list<std::size_t>(args.folds);
  config.options = common.options();
  config.seed = common.seed;
  config.output = common.out;
  config.tolerance = args.tolerance;
  config.engine = rlab::parse_engine(args.engine);
  config.parallel_points = args.parallel_points;
  const auto result = rlab::run_scan(config);

  std::printf("%-6s %4s %6s %26s %14s %10s %8s\n", "N", "p", "A", "moment", "ratio", "seconds", "engine");
  for (const auto& r : result.reports) {
    std::printf("%-6lld %4zu %6zu %26s %14.6g %10.3f %8s\n", static_cast<long long>(r.radius), r.p, r.cardinality,
                r.exact ? rlab::to_string(*r.exact).c_str() : std::to_string(r.moment).c_str(), r.ratio,
                r.wall_seconds, r.engine.c_str());
  }
  for (const auto& f : result.failures) {
    std::printf("skipped N=%lld p=%zu: %s\n", static_cast<long long>(f.radius), 2 * f.s, f.message.c_str());
  }
  bool within = true;
  for (const auto& fit : result.fits) {
    std::printf("p=%zu slope %.4f (conjectured %.1f, tolerance %.2f, max residual %.4f) ratio slope %.4f %s\n",
                2 * fit.s, fit.moment.slope, fit.moment.conjectured.value_or(0), fit.moment.tolerance,
                fit.moment.residual_max, fit.ratio.slope, fit.moment.within_tolerance ? "ok" : "OUTSIDE");
    within = within && fit.moment.within_tolerance;
  }
  return within ? kOk : kVerdictFailed;
}

struct DivisorArgs {
  std::uint64_t n = 0;
  unsigned k = 2;
  std::uint64_t max_bound = 0;
};

int run_divisor(const DivisorArgs& args, const Common& common) {
  nlohmann::json j{{"kind", "divisor"}, {"k", args.k}};
  if (args.max_bound > 0) {
    j["bound"] = args.max_bound;
    j["max"] = rlab::max_divisor(args.max_bound, args.k);
    std::printf("max tau_%u(n) for n <= %llu: %llu\n", args.k, static_cast<unsigned long long>(args.max_bound),
                static_cast<unsigned long long>(j["max"].get<std::uint64_t>()));
  } else {
    if (args.n == 0) throw rlab::InvalidArgument("--n must be positive");
    j["n"] = args.n;
    j["tau"] = rlab::divisor(args.n, args.k);
    std::printf("tau_%u(%llu) = %llu\n", args.k, static_cast<unsigned long long>(args.n),
                static_cast<unsigned long long>(j["tau"].get<std::uint64_t>()));
  }
  rlab::JsonLinesWriter(common.out, false).write(j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact even moments, counting tables and lemma checks for polynomial extension operators"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file with option defaults");

  Common common;
  app.add_option("--seed", common.seed, "Seed for random sets and sampling")->capture_default_str();
  app.add_option("--mem-budget", common.mem_budget, "Memory budget per table build (e.g. 512M, 4G)")
      ->capture_default_str();
  app.add_option("--out", common.out, "Result file (JSON lines; csv for ctable)");
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();

  MomentArgs moment;
  auto* moment_cmd = app.add_subcommand("moment", "Integral of |Ea|^p (exact for even p, Monte Carlo otherwise)");
  moment_cmd->add_option("--curve", moment.curve, "Curve components, e.g. \"x^3, x\"")->capture_default_str();
  moment_cmd->add_option("--set", moment.set, "full | random:D | progression:START:STEP | explicit:a,b,...")
      ->capture_default_str();
  moment_cmd->add_option("-N,--N", moment.radius, "Truncation radius")->required()->check(CLI::NonNegativeNumber);
  moment_cmd->add_option("-p,--p", moment.p, "Exponent")->required()->check(CLI::PositiveNumber);
  moment_cmd->add_option("--engine", moment.engine, "auto | sparse | sorted | dense")->capture_default_str();
  moment_cmd->add_option("--samples", moment.samples, "Use Monte Carlo with this many samples");
  moment_cmd->add_option("--table-out", moment.table_out, "Also export the representation table");
  moment_cmd->add_option("--table-format", moment.table_format, "csv | bin")
      ->check(CLI::IsMember({"csv", "bin"}))
      ->capture_default_str();
  moment_cmd->add_flag("--json", moment.json, "Print JSON instead of a table");

  CTableArgs ctable;
  auto* ctable_cmd = app.add_subcommand("ctable", "Counting table c_t(l) or c'_t(l)");
  ctable_cmd->add_option("--phi", ctable.phi, "Univariate polynomial")->capture_default_str();
  ctable_cmd->add_option("--set", ctable.set, "Set specification")->capture_default_str();
  ctable_cmd->add_option("-N,--N", ctable.radius, "Truncation radius")->required()->check(CLI::NonNegativeNumber);
  ctable_cmd->add_option("-t,--t", ctable.t, "Fold")->check(CLI::Range(1, 3))->capture_default_str();
  ctable_cmd->add_option("--flavor", ctable.flavor, "constrained | unconstrained")->capture_default_str();
  ctable_cmd->add_option("--format", ctable.format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Tenth or eighth moment bound from the c-tables");
  bound_cmd->add_option("--phi", bound.phi, "Univariate polynomial")->capture_default_str();
  bound_cmd->add_option("--set", bound.set, "Set specification")->capture_default_str();
  bound_cmd->add_option("-N,--N", bound.radius, "Truncation radius")->required()->check(CLI::NonNegativeNumber);
  bound_cmd->add_option("-p,--p", bound.kind, "10 (curve (phi, x)) or 8 (curve phi)")
      ->check(CLI::IsMember({8, 10}))
      ->capture_default_str();
  bound_cmd->add_flag("--check", bound.check, "Also compute the exact moment and compare");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run lemma checks on random instances");
  verify_cmd->add_option("--suite", verify.suite, "Comma separated ids, or all")->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Instances per lemma")->capture_default_str();
  verify_cmd->add_option("--max-N", verify.max_radius, "Largest radius of random sets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--phi", verify.phi, "Polynomial for c2-zero, c2-divisor and the bounds")
      ->capture_default_str();
  verify_cmd->add_option("--layer-fold", verify.layer_fold, "s in T(a) = ||Ea||_{2s} for layer-cake")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Moments over a range of N with log-log slope fits");
  scan_cmd->add_option("--curve", scan.curve, "Curve components")->capture_default_str();
  scan_cmd->add_option("--set", scan.set, "Set specification")->capture_default_str();
  scan_cmd->add_option("-N,--N", scan.radii, "Ascending radii, comma separated")->required();
  scan_cmd->add_option("-s,--s", scan.folds, "Folds s (p = 2s), comma separated")->capture_default_str();
  scan_cmd->add_option("--tolerance", scan.tolerance, "Allowed distance from the conjectured slope")
      ->capture_default_str();
  scan_cmd->add_option("--engine", scan.engine, "auto | sparse | sorted | dense")->capture_default_str();
  scan_cmd->add_option("--parallel-points", scan.parallel_points, "Points computed concurrently, sharing the budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  DivisorArgs div;
  auto* divisor_cmd = app.add_subcommand("divisor", "k-fold divisor function");
  divisor_cmd->add_option("-n,--n", div.n, "Argument");
  divisor_cmd->add_option("-k,--k", div.k, "Fold")->check(CLI::Range(1, 64))->capture_default_str();
  divisor_cmd->add_option("--max", div.max_bound, "Report max tau_k(n) for n up to this bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*moment_cmd) return run_moment(moment, common);
    if (*ctable_cmd) return run_ctable(ctable, common);
    if (*bound_cmd) return run_bound(bound, common);
    if (*verify_cmd) return run_verify_cmd(verify, common);
    if (*scan_cmd) return run_scan_cmd(scan, common);
    if (*divisor_cmd) return run_divisor(div, common);
  } catch (const rlab::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const rlab::OverflowError& e) {
    std::cerr << "range limit: " << e.what() << "\n";
    return kResource;
  } catch (const rlab::InvalidArgument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const rlab::DimensionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdictFailed;
  }
  return kUsage;
}
