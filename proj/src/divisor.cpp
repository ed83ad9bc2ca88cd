#include "rlab/divisor.hpp"

#include <algorithm>

#include "rlab/errors.hpp"
#include "rlab/integer.hpp"

namespace rlab {

namespace {

// C(e + k - 1, k - 1): ways to spread exponent e over k ordered factors.
std::uint64_t spread(unsigned e, unsigned k) {
  u128 r = 1;
  for (unsigned i = 1; i <= e; ++i) r = r * (k - 1 + i) / i;
  if (r > UINT64_MAX) throw OverflowError("divisor count exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint64_t> positive_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cannot factorize 0");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t divisor(std::uint64_t n, unsigned k) {
  if (n == 0) throw InvalidArgument("divisor function needs n >= 1");
  if (k == 0) throw InvalidArgument("divisor fold must be positive");
  std::uint64_t result = 1;
  for (auto [p, e] : factorize(n)) result *= spread(e, k);
  return result;
}

std::vector<std::uint64_t> divisor_sieve(std::uint64_t bound, unsigned k) {
  if (k == 0) throw InvalidArgument("divisor fold must be positive");
  std::vector<std::uint32_t> spf(bound + 1, 0);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= bound; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  std::vector<std::uint64_t> tau(bound + 1, 0);
  if (bound >= 1) tau[1] = 1;
  for (std::uint64_t n = 2; n <= bound; ++n) {
    std::uint64_t p = spf[n], m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    tau[n] = tau[m] * spread(e, k);
  }
  return tau;
}

std::uint64_t max_divisor(std::uint64_t bound, unsigned k) {
  auto tau = divisor_sieve(bound, k);
  return bound == 0 ? 0 : *std::max_element(tau.begin() + 1, tau.end());
}

std::vector<std::array<std::int64_t, 3>> signed_divisor_triples(std::int64_t n) {
  if (n == 0) throw InvalidArgument("signed divisor triples need n != 0");
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  auto divs = positive_divisors(m);
  std::vector<std::array<std::int64_t, 3>> out;
  // Sign patterns with product sign equal to sign(n).
  static constexpr std::array<std::array<int, 3>, 8> kSigns{{{1, 1, 1},
                                                             {1, -1, -1},
                                                             {-1, 1, -1},
                                                             {-1, -1, 1},
                                                             {-1, -1, -1},
                                                             {-1, 1, 1},
                                                             {1, -1, 1},
                                                             {1, 1, -1}}};
  std::size_t first = n > 0 ? 0 : 4;
  for (auto a : divs) {
    std::uint64_t rest = m / a;
    for (auto b : divs) {
      if (b > rest) break;
      if (rest % b != 0) continue;
      std::uint64_t c = rest / b;
      for (std::size_t s = first; s < first + 4; ++s) {
        out.push_back({kSigns[s][0] * static_cast<std::int64_t>(a), kSigns[s][1] * static_cast<std::int64_t>(b),
                       kSigns[s][2] * static_cast<std::int64_t>(c)});
      }
    }
  }
  return out;
}

}  // namespace rlab
