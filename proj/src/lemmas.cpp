#include "rlab/lemmas.hpp"

#include <cmath>
#include <cstdio>

#include "membership.hpp"
#include "rlab/bounds.hpp"
#include "rlab/divisor.hpp"
#include "rlab/errors.hpp"

namespace rlab {

namespace {

std::string describe(const WeightedSequence& seq) {
  return "N=" + std::to_string(seq.radius()) + " set=" + set_to_json(seq).dump();
}

void finish(LemmaVerdict& v, i128 lhs, i128 rhs, bool holds) {
  v.lhs = to_string(lhs);
  v.rhs = to_string(rhs);
  v.slack = static_cast<double>(rhs) - static_cast<double>(lhs);
  v.holds = holds;
}

std::int64_t cube(std::int64_t x) { return checked_mul(checked_mul(x, x), x); }

}  // namespace

nlohmann::json LemmaVerdict::to_json() const {
  nlohmann::json j;
  j["lemma"] = id;
  j["instance"] = instance;
  j["instance_hash"] = instance_hash(instance);
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["slack"] = slack;
  j["holds"] = holds;
  j["vacuous"] = vacuous;
  if (witness) j["witness"] = *witness;
  j["extras"] = extras;
  return j;
}

std::string instance_hash(const std::string& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LemmaVerdict verify_cubic_identity(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("empty box");
  LemmaVerdict v;
  v.id = "cubic-identity";
  v.instance = "box=[" + std::to_string(lo) + "," + std::to_string(hi) + "]^3";
  i128 checked = 0, agree = 0;
  for (std::int64_t a = lo; a <= hi; ++a) {
    for (std::int64_t b = lo; b <= hi; ++b) {
      for (std::int64_t c = lo; c <= hi; ++c) {
        i128 m = static_cast<i128>(a) + b + c;
        i128 left = m * m * m - (static_cast<i128>(cube(a)) + cube(b) + cube(c));
        i128 right = 3 * static_cast<i128>(a + b) * (b + c) * (c + a);
        ++checked;
        if (left == right) {
          ++agree;
        } else if (!v.witness) {
          v.witness = nlohmann::json::array({a, b, c});
        }
      }
    }
  }
  const Polynomial left = Polynomial::parse("(x0+x1+x2)^3 - (x0^3+x1^3+x2^3)", 3);
  const Polynomial right = Polynomial::parse("3*(x0+x1)*(x1+x2)*(x2+x0)", 3);
  const bool symbolic = left == right;
  v.extras["symbolic"] = symbolic;
  v.extras["expansion"] = left.to_string();
  finish(v, agree, checked, agree == checked && symbolic);
  if (!symbolic && !v.witness) v.witness = nlohmann::json{{"lhs", left.to_string()}, {"rhs", right.to_string()}};
  return v;
}

LemmaVerdict verify_c2_zero(const WeightedSequence& seq, const Polynomial& phi, const ComputeOptions& options) {
  if (!seq.is_indicator()) throw InvalidArgument("c2-zero needs an indicator set");
  if (phi.variables() != 1 || phi.degree() < 3) throw InvalidArgument("c2-zero needs a univariate phi of degree >= 3");
  LemmaVerdict v;
  v.id = "c2-zero";
  v.instance = "phi=" + phi.to_string() + " " + describe(seq);
  const i128 a = static_cast<i128>(seq.cardinality());
  const i128 exact = seq.empty() ? 0 : c_table(seq, phi, 2, CFlavor::constrained, options).at(0);

  const i128 diagonal = 2 * a * a - a;
  i128 off_diagonal = 0;
  const bool cubic = is_pure_cube(phi);
  const detail::Membership member(seq);
  if (cubic) {
    // psi = -3(x1 + x2): x2 = -x1 and then y2 = -y1.
    i128 z = 0;
    for (auto x : seq.support()) z += member.contains(-x) ? 1 : 0;
    off_diagonal = z * z - 2 * z + (member.contains(0) ? 1 : 0);
  } else {
    const Polynomial psi = quotient_psi3(phi);
    for (auto x1 : seq.support()) {
      for (auto y1 : seq.support()) {
        if (x1 == y1) continue;
        for (auto x2 : seq.support()) {
          if (x2 == y1 || !member.contains(x1 + x2 - y1)) continue;
          if (psi.evaluate({x1, y1, x2}) == 0) ++off_diagonal;
        }
      }
    }
  }
  const i128 structural = diagonal + off_diagonal;
  const i128 bound = (cubic ? 3 : phi.degree()) * a * a;
  v.extras["structural"] = to_string(structural);
  v.extras["diagonal"] = to_string(diagonal);
  v.extras["off_diagonal"] = to_string(off_diagonal);
  v.extras["structural_matches"] = structural == exact;
  v.extras["ratio_to_A2"] = a == 0 ? 0.0 : static_cast<double>(exact) / static_cast<double>(a * a);
  v.extras["route"] = cubic ? "cubic" : "general";
  finish(v, exact, bound, exact <= bound && structural == exact);
  if (!v.holds) v.witness = set_to_json(seq);
  return v;
}

C3Recount c3_zero_recount(const WeightedSequence& seq, const ComputeOptions& options) {
  if (!seq.is_indicator()) throw InvalidArgument("c3-zero needs an indicator set");
  C3Recount r;
  const Polynomial phi = Polynomial::parse("x^3");
  const i128 a = static_cast<i128>(seq.cardinality());
  const std::int64_t n = seq.radius();
  const auto span = static_cast<std::uint64_t>(checked_mul(checked_mul(checked_mul(std::int64_t{8}, n), n), n));
  r.max_tau3 = max_divisor(span, 3);
  r.bound = 3 * a * a * a + 8 * a * a * a * static_cast<i128>(r.max_tau3);
  if (seq.empty()) return r;
  r.exact = c_table(seq, phi, 3, CFlavor::constrained, options).at(0);

  const detail::Membership member(seq);
  const auto& pts = seq.support();
  SparseTable<std::int64_t> vanishing_groups;
  for (auto x1 : pts) {
    for (auto x2 : pts) {
      for (auto x3 : pts) {
        const std::int64_t m = x1 + x2 + x3;
        const i128 product = static_cast<i128>(x1 + x2) * (x2 + x3) * (x3 + x1);
        if (product == 0) {
          vanishing_groups.add({m, cube(x1) + cube(x2) + cube(x3), 0}, 1);
          continue;
        }
        // y1 + y2 = d1, y2 + y3 = d2, y3 + y1 = d3 with d1 d2 d3 = product and d1 + d2 + d3 = 2M.
        for (const auto& d : signed_divisor_triples(narrow_i64(product))) {
          if (d[0] + d[1] + d[2] != 2 * m) continue;
          if (member.contains(m - d[1]) && member.contains(m - d[2]) && member.contains(m - d[0])) ++r.nonvanishing;
        }
      }
    }
  }
  vanishing_groups.for_each([&](const LatticeKey&, std::int64_t c) { r.vanishing += static_cast<i128>(c) * c; });
  return r;
}

LemmaVerdict verify_c3_zero(const WeightedSequence& seq, const ComputeOptions& options) {
  LemmaVerdict v;
  v.id = "c3-zero";
  v.instance = "phi=x^3 " + describe(seq);
  const C3Recount r = c3_zero_recount(seq, options);
  const i128 a = static_cast<i128>(seq.cardinality());
  const bool partition = r.vanishing + r.nonvanishing == r.exact;
  v.extras["vanishing"] = to_string(r.vanishing);
  v.extras["nonvanishing"] = to_string(r.nonvanishing);
  v.extras["partition_exact"] = partition;
  v.extras["max_tau3"] = r.max_tau3;
  const double a3 = static_cast<double>(a * a * a);
  v.extras["vanishing_constant"] = a == 0 ? 0.0 : static_cast<double>(r.vanishing) / a3;
  v.extras["vanishing_within_3A3"] = r.vanishing <= 3 * a * a * a;
  if (a > 0 && seq.radius() >= 3) {
    const double n = static_cast<double>(seq.radius());
    v.extras["kappa"] = std::log(static_cast<double>(r.exact) / a3) * std::log(std::log(n)) / std::log(n);
  }
  finish(v, r.exact, r.bound, partition && r.exact <= r.bound);
  if (!v.holds) v.witness = set_to_json(seq);
  return v;
}

LemmaVerdict verify_sde(const Polynomial& p, std::span<const std::int64_t> set) {
  if (p.is_zero()) throw InvalidArgument("the zero polynomial vanishes everywhere");
  if (p.variables() > 4) throw InvalidArgument("at most 4 variables");
  if (set.size() > 40) throw InvalidArgument("at most 40 points");
  LemmaVerdict v;
  v.id = "sde";
  nlohmann::json pts(std::vector<std::int64_t>(set.begin(), set.end()));
  v.instance = "p=" + p.to_string() + " set=" + pts.dump();
  const ZeroCount z = count_zeros(p, set, p.variables());
  v.extras["degree"] = p.degree();
  v.extras["arity"] = p.variables();
  finish(v, static_cast<i128>(z.zeros), z.bound, z.within_bound);
  if (!v.holds) v.witness = pts;
  return v;
}

double indicator_ratio(const WeightedSequence& indicator, const CurveSystem& curve, std::size_t s,
                       const ComputeOptions& options) {
  if (indicator.empty()) return 0;
  const double moment = even_moment(indicator, curve, s, options).value;
  return std::pow(moment, 1.0 / (2.0 * static_cast<double>(s))) / std::sqrt(static_cast<double>(indicator.cardinality()));
}

LemmaVerdict layer_cake_extend(const WeightedSequence& seq, const CurveSystem& curve, std::size_t s, double c,
                               const ComputeOptions& options) {
  if (s == 0) throw InvalidArgument("fold must be at least 1");
  LemmaVerdict v;
  v.id = "layer-cake";
  v.instance = "curve=" + curve.to_string() + " s=" + std::to_string(s) + " C=" + nlohmann::json(c).dump() +
               " N=" + std::to_string(seq.radius()) + " a=" + sequence_to_json(seq).dump();

  const double norm = seq.l2_norm();
  const double t = seq.empty() ? 0.0 : std::pow(even_moment(seq, curve, s, options).value, 1.0 / (2.0 * s));
  const double n = static_cast<double>(std::max<std::int64_t>(seq.radius(), 1));
  const double rhs = std::sqrt(2.0) * c * (2.0 + std::sqrt(std::log(n))) * norm;
  const double rhs_points = std::sqrt(2.0) * c * (2.0 + std::sqrt(std::log(2.0 * n + 1.0))) * norm;

  // Dyadic level sets of |a|.
  const double top = seq.max_abs();
  std::vector<std::vector<std::int64_t>> levels;
  for (std::size_t i = 0; i < seq.cardinality(); ++i) {
    const double m = std::abs(seq.weights()[i]);
    std::size_t j = 0;
    while (m <= std::ldexp(top, -static_cast<int>(j) - 1)) ++j;
    if (levels.size() <= j) levels.resize(j + 1);
    levels[j].push_back(seq.support()[i]);
  }
  nlohmann::json level_json = nlohmann::json::array();
  double level_sum = 0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (levels[j].empty()) continue;
    const auto indicator = WeightedSequence::indicator(seq.radius(), levels[j]);
    const double ratio = indicator_ratio(indicator, curve, s, options);
    const double tj = ratio * std::sqrt(static_cast<double>(levels[j].size()));
    const double contribution = std::ldexp(top, -static_cast<int>(j)) * tj;
    level_sum += contribution;
    if (ratio > c * (1 + 1e-12)) v.vacuous = true;
    level_json.push_back({{"level", j}, {"size", levels[j].size()}, {"ratio", ratio}, {"contribution", contribution}});
  }
  v.extras["levels"] = level_json;
  v.extras["level_sum"] = level_sum;
  v.extras["norm"] = norm;
  v.extras["rhs_support_length"] = rhs_points;
  v.extras["holds_support_length"] = t <= rhs_points;

  v.lhs = nlohmann::json(t).dump();
  v.rhs = nlohmann::json(rhs).dump();
  v.slack = rhs - t;
  v.holds = t <= rhs;
  if (!v.holds) v.witness = sequence_to_json(seq);
  return v;
}

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t variables, int max_degree) {
  if (variables == 0 || max_degree < 1) throw InvalidArgument("need at least one variable and degree 1");
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  for (;;) {
    Polynomial p(variables);
    if (pick(0, 1) == 0) {
      // Product of affine forms: these vanish on many lattice points.
      p = Polynomial::constant(1, variables);
      const auto factors = pick(1, max_degree);
      for (std::int64_t f = 0; f < factors; ++f) {
        Polynomial form = Polynomial::constant(pick(-3, 3), variables);
        for (std::size_t i = 0; i < variables; ++i) {
          form += Polynomial::variable(i, variables) * static_cast<i128>(pick(-2, 2));
        }
        p = p * form;
      }
    } else {
      const auto terms = pick(1, 4);
      for (std::int64_t t = 0; t < terms; ++t) {
        Exponents e(variables, 0);
        auto budget = pick(0, max_degree);
        for (std::size_t i = 0; i < variables && budget > 0; ++i) {
          auto k = i + 1 == variables ? budget : pick(0, budget);
          e[i] = static_cast<std::uint32_t>(k);
          budget -= k;
        }
        auto coef = pick(-5, 5);
        if (coef != 0) p += Polynomial::monomial(coef, e);
      }
    }
    if (!p.is_zero()) return p;
  }
}

}  // namespace rlab
