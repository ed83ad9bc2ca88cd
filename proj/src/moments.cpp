#include "rlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

// Larger windows mean fewer passes but more cache misses; 2^22 was fastest in practice.
constexpr std::uint64_t kMaxWindow = 1ULL << 22;

std::vector<std::int64_t> sorted_values(const WeightedSequence& seq, const Polynomial& phi) {
  std::vector<std::int64_t> v;
  v.reserve(seq.cardinality());
  for (auto n : seq.support()) v.push_back(narrow_i64(phi(n)));
  std::sort(v.begin(), v.end());
  return v;
}

long double multiset_count(std::size_t a, std::size_t s) {
  // C(a + s - 1, s)
  if (a == 0) return 0;
  long double c = 1;
  for (std::size_t i = 1; i <= s; ++i) c = c * static_cast<long double>(a - 1 + i) / static_cast<long double>(i);
  return c;
}

std::vector<std::uint64_t> factorials(std::size_t s) {
  std::vector<std::uint64_t> f(s + 2, 1);
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}

/// Walks every s-multiset of indices i_1 <= ... <= i_s over the ascending
/// value array, handing the last level to `leaf` as a contiguous index range
/// together with the two possible multiplicity weights: `w_extend` when the
/// last index repeats the previous one and `w_new` otherwise.
///
/// `prune(level_remaining, start, partial)` returns the first admissible index
/// at a level (or values.size() to cut the subtree); `stop(remaining, i, partial)`
/// ends the scan of a level early.
class MultisetWalker {
 public:
  MultisetWalker(std::span<const std::int64_t> values, std::size_t s) : v_(values), s_(s), fact_(factorials(s)) {}

  template <class Skip, class Stop, class Leaf>
  void walk(Skip&& skip, Stop&& stop, Leaf&& leaf) const {
    if (v_.empty() || s_ == 0) return;
    descend(0, 0, 0, 1, 0, skip, stop, leaf);
  }

 private:
  // denom: product of factorials of closed runs; run: length of the open run.
  template <class Skip, class Stop, class Leaf>
  void descend(std::size_t level, std::size_t start, std::int64_t partial, std::uint64_t denom, std::size_t run,
               Skip& skip, Stop& stop, Leaf& leaf) const {
    const std::size_t remaining = s_ - level;
    if (remaining == 1) {
      std::uint64_t w_extend = fact_[s_] / (denom * fact_[run + 1]);
      std::uint64_t w_new = fact_[s_] / (denom * fact_[run]);
      leaf(start, partial, level == 0 ? w_new : w_extend, w_new, level > 0);
      return;
    }
    for (std::size_t i = skip(remaining, start, partial); i < v_.size(); ++i) {
      if (stop(remaining, i, partial)) break;
      bool repeat = level > 0 && i == start;
      std::uint64_t next_denom = repeat ? denom : denom * fact_[run];
      std::size_t next_run = repeat ? run + 1 : 1;
      descend(level + 1, i, partial + v_[i], next_denom, next_run, skip, stop, leaf);
    }
  }

  std::span<const std::int64_t> v_;
  std::size_t s_;
  std::vector<std::uint64_t> fact_;
};

std::vector<std::pair<std::int64_t, std::int64_t>> sorted_multiset_rep(std::span<const std::int64_t> v,
                                                                       std::size_t s,
                                                                       const ComputeOptions& options) {
  long double count = multiset_count(v.size(), s);
  long double bytes = count * 16;
  if (bytes > static_cast<long double>(options.memory_budget)) {
    throw ResourceError("fold " + std::to_string(s) + ": " +
                        std::to_string(static_cast<unsigned long long>(count)) +
                        " multisets (" + format_bytes(bytes) + ") exceed the memory budget of " +
                        format_bytes(options.memory_budget));
  }
  if (!v.empty()) {
    checked_mul(static_cast<std::int64_t>(s), v.front());
    checked_mul(static_cast<std::int64_t>(s), v.back());
  }
  std::vector<std::pair<std::int64_t, std::uint64_t>> items;
  items.reserve(static_cast<std::size_t>(count));
  MultisetWalker walker(v, s);
  walker.walk([](std::size_t, std::size_t start, std::int64_t) { return start; },
              [](std::size_t, std::size_t, std::int64_t) { return false; },
              [&](std::size_t start, std::int64_t partial, std::uint64_t w_first, std::uint64_t w_new, bool) {
                items.emplace_back(partial + v[start], w_first);
                for (std::size_t j = start + 1; j < v.size(); ++j) items.emplace_back(partial + v[j], w_new);
              });
  std::sort(items.begin(), items.end());
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [value, w] : items) {
    if (!out.empty() && out.back().first == value) {
      out.back().second = checked_add(out.back().second, static_cast<std::int64_t>(w));
    } else {
      out.emplace_back(value, static_cast<std::int64_t>(w));
    }
  }
  return out;
}

template <class Counter>
i128 dense_window_moment(std::span<const std::int64_t> v, std::size_t s, std::uint64_t window_cap) {
  const auto fold = static_cast<std::int64_t>(s);
  const std::int64_t lo = checked_mul(fold, v.front());
  const std::int64_t hi = checked_mul(fold, v.back());
  const std::int64_t vmax = v.back();
  // A value list closed under negation has r_s(l) = r_s(-l): only l >= 0 is built.
  bool symmetric = true;
  for (std::size_t i = 0, n = v.size(); i < n / 2 + 1 && symmetric; ++i) symmetric = v[i] == -v[n - 1 - i];
  const std::int64_t first_left = symmetric ? 0 : lo;
  const auto range = static_cast<std::uint64_t>(hi - first_left) + 1;
  const std::uint64_t width = std::max<std::uint64_t>(1, std::min(range, window_cap));

  std::vector<Counter> window;
  MultisetWalker walker(v, s);
  u128 total = 0;
  for (std::int64_t left = first_left;; left += static_cast<std::int64_t>(width)) {
    const auto span = static_cast<std::int64_t>(std::min<std::uint64_t>(width, static_cast<std::uint64_t>(hi - left) + 1));
    const std::int64_t right = left + span;  // exclusive
    window.assign(static_cast<std::size_t>(span), 0);

    // First index whose largest completion can still reach the window.
    auto skip = [&](std::size_t remaining, std::size_t start, std::int64_t partial) {
      std::int64_t need = left - partial - static_cast<std::int64_t>(remaining - 1) * vmax;
      return static_cast<std::size_t>(std::lower_bound(v.begin() + static_cast<std::ptrdiff_t>(start), v.end(), need) -
                                      v.begin());
    };
    // Smallest completion already past the window.
    auto stop = [&](std::size_t remaining, std::size_t i, std::int64_t partial) {
      return partial + static_cast<std::int64_t>(remaining) * v[i] >= right;
    };
    auto leaf = [&](std::size_t start, std::int64_t partial, std::uint64_t w_first, std::uint64_t w_new,
                    bool) {
      auto first = std::lower_bound(v.begin() + static_cast<std::ptrdiff_t>(start), v.end(), left - partial);
      auto last = std::lower_bound(first, v.end(), right - partial);
      auto j = static_cast<std::size_t>(first - v.begin());
      const auto end = static_cast<std::size_t>(last - v.begin());
      const std::int64_t offset = partial - left;
      if (j < end && j == start) {
        window[static_cast<std::size_t>(offset + v[j])] += static_cast<Counter>(w_first);
        ++j;
      }
      const auto w = static_cast<Counter>(w_new);
      for (; j < end; ++j) window[static_cast<std::size_t>(offset + v[j])] += w;
    };
    walker.walk(skip, stop, leaf);

    for (std::size_t k = 0; k < window.size(); ++k) {
      const u128 sq = static_cast<u128>(window[k]) * window[k];
      total += symmetric && (left != 0 || k != 0) ? 2 * sq : sq;
    }
    if (right > hi) break;
  }
  if (total > static_cast<u128>(std::numeric_limits<i128>::max())) throw OverflowError("moment exceeds 127 bits");
  return static_cast<i128>(total);
}

i128 univariate_moment(const WeightedSequence& seq, const Polynomial& phi, std::size_t s, MomentEngine engine,
                       const ComputeOptions& options) {
  auto v = sorted_values(seq, phi);
  if (v.empty()) return 0;
  if (engine == MomentEngine::sorted_multisets) {
    i128 total = 0;
    for (const auto& [value, c] : sorted_multiset_rep(v, s, options)) {
      total = checked_add(total, static_cast<i128>(c) * c);
    }
    return total;
  }
  // Each value has at most `mult` preimages, so r_s(l) <= mult * A^(s-1).
  std::size_t mult = 1, run = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    run = v[i] == v[i - 1] ? run + 1 : 1;
    mult = std::max(mult, run);
  }
  long double peak = static_cast<long double>(mult) * std::pow(static_cast<long double>(v.size()), s - 1);
  auto cap_for = [&](std::size_t counter_bytes) {
    std::uint64_t cap = options.window_entries != 0 ? options.window_entries
                                                    : std::min<std::uint64_t>(kMaxWindow, options.memory_budget / counter_bytes);
    return std::max<std::uint64_t>(cap, 1);
  };
  if (peak < 4294967295.0L) return dense_window_moment<std::uint32_t>(v, s, cap_for(4));
  return dense_window_moment<std::uint64_t>(v, s, cap_for(8));
}

}  // namespace

const char* to_string(MomentEngine engine) {
  switch (engine) {
    case MomentEngine::automatic:
      return "auto";
    case MomentEngine::sparse:
      return "sparse";
    case MomentEngine::sorted_multisets:
      return "sorted";
    case MomentEngine::dense_window:
      return "dense";
  }
  return "?";
}

MomentEngine parse_engine(std::string_view text) {
  if (text == "auto") return MomentEngine::automatic;
  if (text == "sparse") return MomentEngine::sparse;
  if (text == "sorted") return MomentEngine::sorted_multisets;
  if (text == "dense") return MomentEngine::dense_window;
  throw InvalidArgument("unknown moment engine '" + std::string(text) + "'");
}

MomentEngine choose_engine(const WeightedSequence& seq, const CurveSystem& curve, std::size_t s,
                           const ComputeOptions& options) {
  if (curve.dimension() != 1 || !seq.is_indicator() || seq.empty()) return MomentEngine::sparse;
  auto v = sorted_values(seq, curve.component(0));
  long double count = multiset_count(v.size(), s);
  long double range = static_cast<long double>(s) * static_cast<long double>(v.back() - v.front()) + 1;
  if (range <= 8 * count) return MomentEngine::dense_window;
  if (count * 16 <= static_cast<long double>(options.memory_budget)) return MomentEngine::sorted_multisets;
  return MomentEngine::sparse;
}

MomentValue even_moment(const WeightedSequence& seq, const CurveSystem& curve, std::size_t s,
                        const ComputeOptions& options, MomentEngine engine) {
  if (s == 0) throw InvalidArgument("moment fold must be at least 1");
  MomentValue out;
  if (engine == MomentEngine::automatic) engine = choose_engine(seq, curve, s, options);
  out.engine = engine;

  if (!seq.is_indicator()) {
    if (engine != MomentEngine::sparse) throw InvalidArgument("weighted sequences need the sparse engine");
    auto table = rep_weights(seq, curve, s, options);
    double total = 0;
    for (const auto& [k, w] : table.sorted_entries()) total += std::norm(w);
    out.value = total;
    return out;
  }

  i128 exact = 0;
  if (engine == MomentEngine::sparse) {
    auto table = rep_counts(seq, curve, s, options);
    table.entries().for_each([&](const LatticeKey&, std::int64_t c) { exact = checked_add(exact, static_cast<i128>(c) * c); });
  } else {
    if (curve.dimension() != 1) throw InvalidArgument(std::string(to_string(engine)) + " engine needs a univariate curve");
    exact = univariate_moment(seq, curve.component(0), s, engine, options);
  }
  out.exact = exact;
  out.value = static_cast<double>(exact);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> univariate_rep(const WeightedSequence& seq,
                                                                  const Polynomial& phi, std::size_t s,
                                                                  const ComputeOptions& options) {
  if (!seq.is_indicator()) throw InvalidArgument("univariate_rep needs an indicator sequence");
  if (s == 0) throw InvalidArgument("fold must be at least 1");
  auto v = sorted_values(seq, phi);
  return sorted_multiset_rep(v, s, options);
}

CTable::CTable(std::size_t fold, CFlavor flavor, std::vector<std::pair<std::int64_t, std::int64_t>> entries)
    : fold_(fold), flavor_(flavor), entries_(std::move(entries)) {}

std::int64_t CTable::at(std::int64_t l) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                             [](const auto& e, std::int64_t key) { return e.first < key; });
  return it != entries_.end() && it->first == l ? it->second : 0;
}

i128 CTable::total() const {
  i128 sum = 0;
  for (const auto& [l, c] : entries_) sum = checked_add(sum, static_cast<i128>(c));
  return sum;
}

std::int64_t CTable::max_nonzero() const {
  std::int64_t best = 0;
  for (const auto& [l, c] : entries_) {
    if (l != 0) best = std::max(best, c);
  }
  return best;
}

CTable c_table(const WeightedSequence& seq, const Polynomial& phi, std::size_t t, CFlavor flavor,
               const ComputeOptions& options) {
  if (!seq.is_indicator()) throw InvalidArgument("c-tables need an indicator sequence");
  if (t == 0) throw InvalidArgument("fold must be at least 1");
  SparseTable<std::int64_t> acc;

  if (flavor == CFlavor::constrained) {
    CurveSystem curve({phi, Polynomial::variable(0, 1)});
    auto entries = rep_counts(seq, curve, t, options).sorted_entries();
    // Group by the linear sum, then pair every x-side value with every y-side value.
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.first[1] != b.first[1] ? a.first[1] < b.first[1] : a.first[0] < b.first[0];
    });
    for (std::size_t begin = 0; begin < entries.size();) {
      std::size_t end = begin;
      while (end < entries.size() && entries[end].first[1] == entries[begin].first[1]) ++end;
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = begin; j < end; ++j) {
          acc.add({checked_add(entries[i].first[0], -entries[j].first[0]), 0, 0},
                  checked_mul(entries[i].second, entries[j].second));
        }
      }
      begin = end;
    }
  } else {
    auto rep = univariate_rep(seq, phi, t, options);
    for (const auto& [vi, ci] : rep) {
      for (const auto& [vj, cj] : rep) acc.add({checked_add(vi, -vj), 0, 0}, checked_mul(ci, cj));
    }
  }

  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.reserve(acc.size());
  for (const auto& [k, c] : acc.sorted()) out.emplace_back(k[0], c);
  return CTable(t, flavor, std::move(out));
}

}  // namespace rlab
