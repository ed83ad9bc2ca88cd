#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

#include "rlab/moments.hpp"

namespace rlab {

/// Outcome of checking one lemma on one instance.
///
/// `holds` is the truth value of the checked (in)equality. `vacuous` marks an
/// instance where the lemma's hypothesis failed, so the conclusion carries no
/// information either way. A witness is attached exactly when `holds` is false.
struct LemmaVerdict {
  std::string id;
  std::string instance;
  std::string lhs;
  std::string rhs;
  double slack = 0;  // rhs - lhs
  bool holds = false;
  bool vacuous = false;
  std::optional<nlohmann::json> witness;
  nlohmann::json extras = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// 64-bit FNV-1a of the instance descriptor, as 16 hex digits.
std::string instance_hash(const std::string& instance);

/// (x1+x2+x3)^3 - (x1^3+x2^3+x3^3) = 3(x1+x2)(x2+x3)(x3+x1) on every triple of
/// [lo, hi]^3, plus a coefficient-level comparison of both expansions.
LemmaVerdict verify_cubic_identity(std::int64_t lo, std::int64_t hi);

/// Exact c_2(0) against 3A^2 (phi = x^3) or kA^2 (general phi of degree k >= 3).
///
/// Solutions split into the diagonal ones (x1 = y1 or x2 = y1, 2A^2 - A of
/// them) and zeros of the quotient psi(x1, y1, x2) off the diagonal; the
/// second class is counted directly and the sum must equal the exact value.
LemmaVerdict verify_c2_zero(const WeightedSequence& seq, const Polynomial& phi, const ComputeOptions& options = {});

struct C3Recount {
  i128 exact = 0;
  /// Pairs (x, y) with (x1+x2)(x2+x3)(x3+x1) = 0.
  i128 vanishing = 0;
  /// Pairs reconstructed from signed divisor triples of the non-zero product.
  i128 nonvanishing = 0;
  std::uint64_t max_tau3 = 0;  // max tau_3(n) over 1 <= n <= 8N^3
  i128 bound = 0;              // 3A^3 + 8A^3 max_tau3
};

/// c_3(0) for phi = x^3, exactly and through the two solution classes.
C3Recount c3_zero_recount(const WeightedSequence& seq, const ComputeOptions& options = {});
LemmaVerdict verify_c3_zero(const WeightedSequence& seq, const ComputeOptions& options = {});

/// Zeros of p over set^s (s = number of variables, at most 4; |set| <= 40) against deg(p) A^(s-1).
LemmaVerdict verify_sde(const Polynomial& p, std::span<const std::int64_t> set);

/// T(1_S) / ||1_S||_2 with T(a) = (integral of |Ea|^{2s})^{1/(2s)}; 0 for the empty set.
double indicator_ratio(const WeightedSequence& indicator, const CurveSystem& curve, std::size_t s,
                       const ComputeOptions& options = {});

/// Dyadic layer-cake check: T(a) <= sqrt(2) C (2 + sqrt(log N)) ||a||_2 with
/// natural log and N the truncation radius. Each level set
/// {2^{-j-1} max < |a| <= 2^{-j} max} is tested against C; if one exceeds it
/// the verdict is vacuous. Extras report every level and the same inequality
/// with log(2N + 1).
LemmaVerdict layer_cake_extend(const WeightedSequence& seq, const CurveSystem& curve, std::size_t s, double c,
                               const ComputeOptions& options = {});

/// Non-zero polynomial in `variables` indeterminates of total degree at most
/// `max_degree`: either a few random monomials or a product of random affine forms.
Polynomial random_polynomial(std::mt19937_64& rng, std::size_t variables, int max_degree);

}  // namespace rlab
