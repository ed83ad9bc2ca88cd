#include "rlab/rep_table.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

unsigned resolve_threads(unsigned requested) {
  return requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
}

template <class Weight>
using Entries = std::vector<std::pair<LatticeKey, Weight>>;

template <class Weight>
Weight weight_of(const WeightedSequence& seq, std::size_t i);

template <>
std::int64_t weight_of<std::int64_t>(const WeightedSequence&, std::size_t) {
  return 1;
}

template <>
std::complex<double> weight_of<std::complex<double>>(const WeightedSequence& seq, std::size_t i) {
  return seq.weights()[i];
}

inline LatticeKey add_keys(const LatticeKey& a, const LatticeKey& b) {
  return {checked_add(a[0], b[0]), checked_add(a[1], b[1]), checked_add(a[2], b[2])};
}

template <class Weight>
SparseTable<Weight> convolve(const Entries<Weight>& outer, const Entries<Weight>& inner, std::size_t expected,
                             unsigned threads) {
  if (threads <= 1) {
    SparseTable<Weight> out(expected);
    for (const auto& [ka, wa] : outer) {
      for (const auto& [kb, wb] : inner) out.add(add_keys(ka, kb), wa * wb);
    }
    return out;
  }
  // Every worker scans all pairs in the same order but keeps only the keys of
  // its own shard, so each key accumulates its terms in a fixed order.
  std::vector<SparseTable<Weight>> shards(threads, SparseTable<Weight>(expected / threads));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      auto& mine = shards[t];
      for (const auto& [ka, wa] : outer) {
        for (const auto& [kb, wb] : inner) {
          LatticeKey k = add_keys(ka, kb);
          std::uint64_t h = hash_key(k);
          if (h % threads == t) mine.add(k, wa * wb, h);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  SparseTable<Weight> out(expected);
  for (const auto& shard : shards) shard.for_each([&](const LatticeKey& k, const Weight& w) { out.add(k, w); });
  return out;
}

long double box_volume(const std::array<std::pair<std::int64_t, std::int64_t>, 3>& box, std::size_t d) {
  long double v = 1;
  for (std::size_t i = 0; i < d; ++i) v *= static_cast<long double>(box[i].second - box[i].first) + 1;
  return v;
}

template <class Weight>
RepTable<Weight> build(const WeightedSequence& seq, const CurveSystem& curve, std::size_t fold,
                       const ComputeOptions& options) {
  if (fold == 0) throw InvalidArgument("fold must be at least 1");
  const std::size_t d = curve.dimension();
  SparseTable<Weight> first(seq.cardinality());
  for (std::size_t i = 0; i < seq.cardinality(); ++i) {
    first.add(curve.values(seq.support()[i]), weight_of<Weight>(seq, i));
  }
  first.erase_zeros();
  Entries<Weight> base = first.sorted();
  SparseTable<Weight> current = std::move(first);
  const unsigned threads = resolve_threads(options.threads);

  for (std::size_t k = 2; k <= fold; ++k) {
    long double estimate = std::min(static_cast<long double>(current.size()) * base.size(),
                                    box_volume(support_box(seq, curve, k), d));
    long double bytes = (estimate + current.size()) * SparseTable<Weight>::bytes_per_entry();
    if (bytes > static_cast<long double>(options.memory_budget)) {
      throw ResourceError("fold " + std::to_string(k) + ": estimated " +
                          std::to_string(static_cast<unsigned long long>(estimate)) + " entries (" + format_bytes(bytes) +
                          ") exceed the memory budget of " + format_bytes(options.memory_budget));
    }
    Entries<Weight> outer = current.sorted();
    current = SparseTable<Weight>();
    current = convolve(outer, base, static_cast<std::size_t>(std::min<long double>(estimate, 1e9L)), threads);
    current.erase_zeros();
  }
  return RepTable<Weight>(d, fold, std::move(current));
}

template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v;
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw InvalidArgument("truncated binary table");
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

template <class Weight, class WriteWeight>
void write_binary_impl(std::ostream& out, const RepTable<Weight>& table, WriteWeight write_weight) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(table.dimension()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(table.fold()));
  put<std::uint64_t>(out, table.size());
  for (const auto& [k, w] : table.sorted_entries()) {
    for (std::size_t i = 0; i < table.dimension(); ++i) put<std::int64_t>(out, k[i]);
    write_weight(w);
  }
}

template <class Weight, class WriteWeight>
void write_csv_impl(std::ostream& out, const RepTable<Weight>& table, const char* weight_header,
                    WriteWeight write_weight) {
  for (std::size_t i = 0; i < table.dimension(); ++i) out << "l" << i + 1 << ",";
  out << weight_header << "\n";
  for (const auto& [k, w] : table.sorted_entries()) {
    for (std::size_t i = 0; i < table.dimension(); ++i) out << k[i] << ",";
    write_weight(w);
    out << "\n";
  }
}

}  // namespace

template <class Weight>
Weight RepTable<Weight>::total_mass() const {
  Weight total{};
  for (const auto& [k, w] : entries_.sorted()) total += w;
  return total;
}

template class RepTable<std::int64_t>;
template class RepTable<std::complex<double>>;

std::array<std::pair<std::int64_t, std::int64_t>, 3> support_box(const WeightedSequence& seq,
                                                                   const CurveSystem& curve, std::size_t fold) {
  std::array<std::pair<std::int64_t, std::int64_t>, 3> box{};
  if (seq.empty()) return box;
  for (std::size_t i = 0; i < curve.dimension(); ++i) {
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (auto n : seq.support()) {
      auto v = curve.values(n)[i];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    auto s = static_cast<std::int64_t>(fold);
    box[i] = {checked_mul(s, lo), checked_mul(s, hi)};
  }
  return box;
}

CountTable rep_counts(const WeightedSequence& seq, const CurveSystem& curve, std::size_t fold,
                      const ComputeOptions& options) {
  if (!seq.is_indicator()) throw InvalidArgument("exact counts need an indicator sequence");
  // Entries are bounded by the total mass A^s.
  if (checked_pow(static_cast<i128>(seq.cardinality()), static_cast<unsigned>(fold)) > INT64_MAX) {
    throw OverflowError("A^s exceeds 64-bit counts");
  }
  return build<std::int64_t>(seq, curve, fold, options);
}

WeightTable rep_weights(const WeightedSequence& seq, const CurveSystem& curve, std::size_t fold,
                        const ComputeOptions& options) {
  return build<std::complex<double>>(seq, curve, fold, options);
}

void write_binary(std::ostream& out, const CountTable& table) {
  write_binary_impl(out, table, [&](std::int64_t w) { put<std::int64_t>(out, w); });
}

void write_binary(std::ostream& out, const WeightTable& table) {
  write_binary_impl(out, table, [&](std::complex<double> w) {
    put<double>(out, w.real());
    put<double>(out, w.imag());
  });
}

CountTable read_binary_counts(std::istream& in) {
  auto d = get<std::uint32_t>(in);
  auto s = get<std::uint32_t>(in);
  auto count = get<std::uint64_t>(in);
  if (d == 0 || d > 3) throw InvalidArgument("binary table has an invalid dimension");
  SparseTable<std::int64_t> entries(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    LatticeKey k{0, 0, 0};
    for (std::uint32_t j = 0; j < d; ++j) k[j] = get<std::int64_t>(in);
    entries.add(k, get<std::int64_t>(in));
  }
  return CountTable(d, s, std::move(entries));
}

void write_csv(std::ostream& out, const CountTable& table) {
  write_csv_impl(out, table, "count", [&](std::int64_t w) { out << w; });
}

void write_csv(std::ostream& out, const WeightTable& table) {
  write_csv_impl(out, table, "re,im", [&](std::complex<double> w) { out << w.real() << "," << w.imag(); });
}

}  // namespace rlab
