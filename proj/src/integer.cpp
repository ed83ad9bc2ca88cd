#include "rlab/integer.hpp"

#include <algorithm>
#include <limits>

namespace rlab {

i128 checked_pow(i128 base, unsigned exponent) {
  i128 result = 1;
  while (exponent > 0) {
    if (exponent & 1u) result = checked_mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = checked_mul(base, base);
  }
  return result;
}

std::int64_t narrow_i64(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("value " + to_string(v) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  // Two's complement negation in unsigned space also covers the minimum value.
  return "-" + to_string(static_cast<u128>(0) - static_cast<u128>(v));
}

i128 parse_i128(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty integer literal");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw InvalidArgument("integer literal has no digits: '" + std::string(text) + "'");
  i128 value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') throw InvalidArgument("bad integer literal: '" + std::string(text) + "'");
    value = checked_add(checked_mul(value, 10), negative ? -(c - '0') : (c - '0'));
  }
  return value;
}

}  // namespace rlab
