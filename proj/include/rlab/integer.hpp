#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rlab/errors.hpp"

namespace rlab {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit overflow in addition");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit overflow in subtraction");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit overflow in multiplication");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit overflow in multiplication");
  return r;
}

i128 checked_pow(i128 base, unsigned exponent);

// Throws OverflowError when v does not fit.
std::int64_t narrow_i64(i128 v);

std::string to_string(i128 v);
std::string to_string(u128 v);

// Decimal with optional leading sign. Throws InvalidArgument on junk, OverflowError on range.
i128 parse_i128(std::string_view text);

inline i128 abs128(i128 v) { return v < 0 ? checked_sub(0, v) : v; }

}  // namespace rlab
