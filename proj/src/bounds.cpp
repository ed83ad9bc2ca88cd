#include "rlab/bounds.hpp"

#include "membership.hpp"
#include "rlab/divisor.hpp"
#include "rlab/errors.hpp"

namespace rlab {

namespace {

void require_indicator(const WeightedSequence& seq) {
  if (!seq.is_indicator()) throw InvalidArgument("bounds need an indicator sequence");
}

void require_univariate(const Polynomial& phi, int min_degree) {
  if (phi.variables() != 1) throw InvalidArgument("phi must be univariate");
  if (phi.degree() < min_degree) {
    throw InvalidArgument("phi must have degree at least " + std::to_string(min_degree));
  }
}

i128 range_factor(const WeightedSequence& seq) { return checked_add(checked_mul(i128{8}, i128{seq.radius()}), 1); }

}  // namespace

bool is_pure_cube(const Polynomial& phi) {
  if (phi.variables() != 1) return false;
  auto c = phi.univariate_coefficients();
  return c.size() == 4 && c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 1;
}

TenthMomentBound tenth_moment_bound(const WeightedSequence& seq, const Polynomial& phi,
                                    const ComputeOptions& options) {
  require_indicator(seq);
  require_univariate(phi, 1);
  TenthMomentBound out;
  out.factor = range_factor(seq);
  if (seq.empty()) return out;
  auto c2 = c_table(seq, phi, 2, CFlavor::constrained, options);
  auto c3 = c_table(seq, phi, 3, CFlavor::constrained, options);
  for (const auto& [l, c] : c2.entries()) {
    i128 term = checked_mul(i128{c}, i128{c3.at(l)});
    if (l == 0) {
      out.zero_term = term;
    } else {
      out.nonzero_total = checked_add(out.nonzero_total, term);
    }
  }
  out.sum = checked_add(out.zero_term, out.nonzero_total);
  out.bound = checked_mul(out.factor, out.sum);
  return out;
}

EighthMomentBound eighth_moment_bound(const WeightedSequence& seq, const Polynomial& phi,
                                      const ComputeOptions& options) {
  require_indicator(seq);
  require_univariate(phi, 3);
  EighthMomentBound out;
  out.factor = range_factor(seq);
  if (seq.empty()) return out;
  auto c2 = c_table(seq, phi, 2, CFlavor::constrained, options);
  auto c2p = c_table(seq, phi, 2, CFlavor::unconstrained, options);
  for (const auto& [l, c] : c2.entries()) out.sum = checked_add(out.sum, checked_mul(i128{c}, i128{c2p.at(l)}));
  out.full_bound = checked_mul(out.factor, out.sum);
  out.c2_zero = c2.at(0);
  out.c2_prime_zero = c2p.at(0);
  out.c2_max_nonzero = c2.max_nonzero();
  i128 a4 = checked_pow(static_cast<i128>(seq.cardinality()), 4);
  out.refined_bound = checked_mul(out.factor, checked_add(checked_mul(i128{out.c2_zero}, i128{out.c2_prime_zero}),
                                                          checked_mul(a4, i128{out.c2_max_nonzero})));
  return out;
}

DivisorCertificate c2_nonzero_divisor_check(const WeightedSequence& seq, const Polynomial& phi, std::int64_t l) {
  require_indicator(seq);
  require_univariate(phi, 3);
  if (l == 0) throw InvalidArgument("the divisor check needs l != 0");
  DivisorCertificate cert;
  cert.l = l;
  const detail::Membership member(seq);
  const auto& pts = seq.support();

  std::vector<i128> values;
  values.reserve(pts.size());
  for (auto n : pts) values.push_back(phi(n));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        std::int64_t y2 = pts[i] + pts[j] - pts[k];
        if (!member.contains(y2)) continue;
        if (values[i] + values[j] - values[k] - phi(y2) == l) ++cert.count;
      }
    }
  }

  if (is_pure_cube(phi)) {
    cert.route = "cubic";
    cert.divisible = l % 3 == 0;
    if (cert.divisible) {
      const std::int64_t m = -l / 3;
      cert.tau3 = divisor(static_cast<std::uint64_t>(m < 0 ? -m : m), 3);
      cert.ceiling = 8 * static_cast<i128>(cert.tau3);
      for (const auto& e : signed_divisor_triples(m)) {
        ++cert.triples;
        // e = (x1 - y1, x2 - y1, x1 + x2)
        const std::int64_t twice_x1 = e[2] + e[0] - e[1];
        if (twice_x1 % 2 != 0) continue;
        const std::int64_t x1 = twice_x1 / 2, x2 = e[2] - x1, y1 = x1 - e[0], y2 = x1 + x2 - y1;
        if (member.contains(x1) && member.contains(x2) && member.contains(y1) && member.contains(y2)) ++cert.structural;
      }
    }
  } else {
    cert.route = "general";
    const Polynomial psi = quotient_psi3(phi);
    cert.tau3 = divisor(static_cast<std::uint64_t>(l < 0 ? -l : l), 3);
    cert.ceiling = 8 * static_cast<i128>(cert.tau3) * (phi.degree() - 2);
    for (const auto& e : signed_divisor_triples(l)) {
      ++cert.triples;
      for (auto y1 : pts) {
        const std::int64_t x1 = y1 + e[0], x2 = y1 + e[1];
        if (!member.contains(x1) || !member.contains(x2) || !member.contains(x1 + x2 - y1)) continue;
        if (psi.evaluate({x1, y1, x2}) == e[2]) ++cert.structural;
      }
    }
  }
  cert.holds = cert.count == cert.structural && cert.count <= cert.ceiling;
  return cert;
}

}  // namespace rlab
