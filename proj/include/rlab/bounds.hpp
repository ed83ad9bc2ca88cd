#pragma once

#include <cstdint>
#include <string>

#include "rlab/moments.hpp"

namespace rlab {

/// (8N+1) * sum_l c_2(l) c_3(l), split by whether l is zero.
struct TenthMomentBound {
  i128 factor = 0;         // 8N + 1
  i128 sum = 0;            // sum_l c_2(l) c_3(l)
  i128 zero_term = 0;      // c_2(0) c_3(0)
  i128 nonzero_total = 0;  // sum over l != 0
  i128 bound = 0;          // factor * sum
};

TenthMomentBound tenth_moment_bound(const WeightedSequence& seq, const Polynomial& phi,
                                    const ComputeOptions& options = {});

/// The two eighth-moment chains for a univariate phi:
/// (8N+1) sum_l c_2(l) c'_2(l) <= (8N+1)(c_2(0) c'_2(0) + A^4 max_{l != 0} c_2(l)).
struct EighthMomentBound {
  i128 factor = 0;
  i128 sum = 0;
  i128 full_bound = 0;
  std::int64_t c2_zero = 0;
  std::int64_t c2_prime_zero = 0;
  std::int64_t c2_max_nonzero = 0;
  i128 refined_bound = 0;
};

EighthMomentBound eighth_moment_bound(const WeightedSequence& seq, const Polynomial& phi,
                                      const ComputeOptions& options = {});

/// c_2(l) for l != 0 counted directly, recounted through factorisations of l,
/// and compared with the divisor ceiling.
///
/// For phi = x^3 every solution has l = -3 (x1 - y1)(x2 - y1)(x1 + x2), so 3 | l
/// and the solutions biject with signed triples of -l/3 that reconstruct points
/// of the set; the ceiling is 8 tau_3(|l|/3). For other phi of degree >= 3,
/// l = (x1 - y1)(x2 - y1) psi(x1, y1, x2) and each signed triple of l leaves
/// a polynomial equation of degree k - 2 in y1; the ceiling is 8 tau_3(|l|)(k - 2).
struct DivisorCertificate {
  std::int64_t l = 0;
  std::string route;        // "cubic" or "general"
  bool divisible = true;    // cubic route: 3 | l
  i128 count = 0;           // c_2(l) by direct enumeration
  i128 structural = 0;      // recount through the divisor triples
  std::uint64_t triples = 0;  // signed triples examined
  std::uint64_t tau3 = 0;
  i128 ceiling = 0;
  bool holds = false;       // count == structural && count <= ceiling
};

DivisorCertificate c2_nonzero_divisor_check(const WeightedSequence& seq, const Polynomial& phi, std::int64_t l);

/// True when phi is exactly x^3.
bool is_pure_cube(const Polynomial& phi);

}  // namespace rlab
