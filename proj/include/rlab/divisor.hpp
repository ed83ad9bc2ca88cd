#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace rlab {

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// k-fold divisor function: number of ordered k-tuples of positive integers with product n.
std::uint64_t divisor(std::uint64_t n, unsigned k);

/// tau_k(n) for every n in [0, bound] via a smallest-prime-factor sieve (entry 0 unused).
std::vector<std::uint64_t> divisor_sieve(std::uint64_t bound, unsigned k);

/// max_{1 <= n <= bound} tau_k(n); 0 when bound == 0.
std::uint64_t max_divisor(std::uint64_t bound, unsigned k);

/// Every ordered triple of non-zero integers (d1, d2, d3) with d1 d2 d3 = n.
/// There are exactly 4 tau_3(|n|) of them.
std::vector<std::array<std::int64_t, 3>> signed_divisor_triples(std::int64_t n);

}  // namespace rlab
