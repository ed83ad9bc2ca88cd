#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace rlab {

using LatticeKey = std::array<std::int64_t, 3>;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash_key(const LatticeKey& k) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(k[0]) + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(k[1]));
  return mix64(h ^ static_cast<std::uint64_t>(k[2]));
}

inline bool is_zero_weight(std::int64_t w) { return w == 0; }
inline bool is_zero_weight(const std::complex<double>& w) { return w == std::complex<double>(0.0, 0.0); }

/// Open-addressing hash map from lattice points to accumulated weights.
/// Linear probing, power-of-two capacity, load factor at most 1/2.
template <class Weight>
class SparseTable {
 public:
  struct Slot {
    LatticeKey key;
    Weight weight;
    bool used;
  };

  static constexpr std::size_t bytes_per_entry() { return 2 * sizeof(Slot); }

  explicit SparseTable(std::size_t expected = 0) { rehash(capacity_for(expected)); }

  void add(const LatticeKey& key, const Weight& w) { add(key, w, hash_key(key)); }

  void add(const LatticeKey& key, const Weight& w, std::uint64_t hash) {
    if (2 * (size_ + 1) > slots_.size()) {
      rehash(slots_.size() * 2);
    }
    std::size_t i = hash & mask_;
    for (;;) {
      Slot& s = slots_[i];
      if (!s.used) {
        s.used = true;
        s.key = key;
        s.weight = w;
        ++size_;
        return;
      }
      if (s.key == key) {
        s.weight += w;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  const Weight* find(const LatticeKey& key) const {
    std::size_t i = hash_key(key) & mask_;
    for (;;) {
      const Slot& s = slots_[i];
      if (!s.used) return nullptr;
      if (s.key == key) return &s.weight;
      i = (i + 1) & mask_;
    }
  }

  Weight at(const LatticeKey& key) const {
    const Weight* w = find(key);
    return w ? *w : Weight{};
  }

  std::size_t size() const { return size_; }

  template <class F>
  void for_each(F&& f) const {
    for (const Slot& s : slots_) {
      if (s.used) f(s.key, s.weight);
    }
  }

  /// Entries in ascending lexicographic key order.
  std::vector<std::pair<LatticeKey, Weight>> sorted() const {
    std::vector<std::pair<LatticeKey, Weight>> out;
    out.reserve(size_);
    for_each([&](const LatticeKey& k, const Weight& w) { out.emplace_back(k, w); });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  /// Drops entries whose weight cancelled to exactly zero.
  void erase_zeros() {
    std::vector<std::pair<LatticeKey, Weight>> keep;
    keep.reserve(size_);
    for_each([&](const LatticeKey& k, const Weight& w) {
      if (!is_zero_weight(w)) keep.emplace_back(k, w);
    });
    if (keep.size() == size_) return;
    rehash(capacity_for(keep.size()), false);
    for (const auto& [k, w] : keep) add(k, w);
  }

 private:
  static std::size_t capacity_for(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected + 2) cap *= 2;
    return cap;
  }

  void rehash(std::size_t capacity, bool keep_contents = true) {
    std::vector<Slot> old;
    old.swap(slots_);
    slots_.assign(capacity, Slot{LatticeKey{0, 0, 0}, Weight{}, false});
    mask_ = capacity - 1;
    size_ = 0;
    if (!keep_contents) return;
    for (const Slot& s : old) {
      if (s.used) add(s.key, s.weight);
    }
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace rlab
