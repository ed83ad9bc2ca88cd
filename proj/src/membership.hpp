#pragma once

#include <cstdint>
#include <vector>

#include "rlab/sequence.hpp"

namespace rlab::detail {

// Constant-time membership test for the support of a sequence.
class Membership {
 public:
  explicit Membership(const WeightedSequence& seq) : radius_(seq.radius()) {
    bits_.assign(static_cast<std::size_t>(2 * radius_ + 1), 0);
    for (auto n : seq.support()) bits_[static_cast<std::size_t>(n + radius_)] = 1;
  }

  bool contains(std::int64_t n) const {
    return n >= -radius_ && n <= radius_ && bits_[static_cast<std::size_t>(n + radius_)] != 0;
  }

  template <class T>
  bool contains_wide(T n) const {
    return n >= -radius_ && n <= radius_ && bits_[static_cast<std::size_t>(n + radius_)] != 0;
  }

 private:
  std::int64_t radius_;
  std::vector<char> bits_;
};

}  // namespace rlab::detail
