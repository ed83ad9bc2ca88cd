#include "rlab/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

namespace rlab {

namespace {

void check_radius(std::int64_t radius) {
  if (radius < 0) throw InvalidArgument("truncation radius must be non-negative");
}

void check_point(std::int64_t n, std::int64_t radius) {
  if (n < -radius || n > radius) {
    throw InvalidArgument("point " + std::to_string(n) + " outside [-" + std::to_string(radius) + ", " +
                          std::to_string(radius) + "]");
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_i64(std::string_view s) { return narrow_i64(parse_i128(trim(s))); }

double parse_double(std::string_view s) {
  std::string str(trim(s));
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("bad number '" + str + "'");
  }
  if (used != str.size()) throw InvalidArgument("bad number '" + str + "'");
  return v;
}

bool is_gaussian_integer(std::complex<double> w) {
  return std::trunc(w.real()) == w.real() && std::trunc(w.imag()) == w.imag() && std::abs(w.real()) < 0x1p62 &&
         std::abs(w.imag()) < 0x1p62;
}

}  // namespace

WeightedSequence WeightedSequence::indicator(std::int64_t radius, std::vector<std::int64_t> points) {
  check_radius(radius);
  for (auto n : points) check_point(n, radius);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  WeightedSequence s;
  s.radius_ = radius;
  s.indicator_ = true;
  s.weights_.assign(points.size(), Weight(1.0, 0.0));
  s.support_ = std::move(points);
  return s;
}

WeightedSequence WeightedSequence::weighted(std::int64_t radius,
                                            std::vector<std::pair<std::int64_t, Weight>> entries) {
  check_radius(radius);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  WeightedSequence s;
  s.radius_ = radius;
  for (const auto& [n, w] : entries) {
    check_point(n, radius);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw InvalidArgument("non-finite weight");
    if (!s.support_.empty() && s.support_.back() == n) {
      s.weights_.back() += w;
    } else {
      s.support_.push_back(n);
      s.weights_.push_back(w);
    }
  }
  // Drop cancelled entries so the support holds non-zero weights only.
  std::size_t keep = 0;
  for (std::size_t i = 0; i < s.support_.size(); ++i) {
    if (s.weights_[i] != Weight(0.0, 0.0)) {
      s.support_[keep] = s.support_[i];
      s.weights_[keep] = s.weights_[i];
      ++keep;
    }
  }
  s.support_.resize(keep);
  s.weights_.resize(keep);
  s.indicator_ = std::all_of(s.weights_.begin(), s.weights_.end(), [](Weight w) { return w == Weight(1.0, 0.0); });
  return s;
}

double WeightedSequence::l2_norm() const {
  double sum = 0;
  for (auto w : weights_) sum += std::norm(w);
  return std::sqrt(sum);
}

double WeightedSequence::l1_norm() const {
  double sum = 0;
  for (auto w : weights_) sum += std::abs(w);
  return sum;
}

double WeightedSequence::max_abs() const {
  double best = 0;
  for (auto w : weights_) best = std::max(best, std::abs(w));
  return best;
}

std::optional<i128> WeightedSequence::l2_norm_squared_exact() const {
  i128 sum = 0;
  for (auto w : weights_) {
    if (!is_gaussian_integer(w)) return std::nullopt;
    auto re = static_cast<i128>(w.real()), im = static_cast<i128>(w.imag());
    sum = checked_add(sum, checked_add(checked_mul(re, re), checked_mul(im, im)));
  }
  return sum;
}

WeightedSequence WeightedSequence::indicator_of(std::span<const std::int64_t> subset) const {
  for (auto n : subset) {
    if (!std::binary_search(support_.begin(), support_.end(), n)) {
      throw InvalidArgument("point " + std::to_string(n) + " is not in the support");
    }
  }
  return indicator(radius_, std::vector<std::int64_t>(subset.begin(), subset.end()));
}

CurveSystem::CurveSystem(std::vector<Polynomial> components) : components_(std::move(components)) {
  if (components_.empty() || components_.size() > kMaxDimension) {
    throw InvalidArgument("a curve system has between 1 and 3 components");
  }
  for (const auto& p : components_) {
    if (p.variables() != 1) throw DimensionError("curve components must be univariate");
    if (p.degree() < 1) throw InvalidArgument("curve components must be non-constant");
  }
}

CurveSystem CurveSystem::parse(std::string_view text) {
  std::vector<Polynomial> parts;
  for (auto piece : split(text, ',')) {
    piece = trim(piece);
    if (!piece.empty() && piece.front() == '(') piece.remove_prefix(1);
    if (!piece.empty() && piece.back() == ')') piece.remove_suffix(1);
    parts.push_back(Polynomial::parse(piece, 1));
  }
  return CurveSystem(std::move(parts));
}

int CurveSystem::degree_sum() const {
  int sum = 0;
  for (const auto& p : components_) sum += p.degree();
  return sum;
}

CurveSystem::Point CurveSystem::values(std::int64_t n) const {
  Point out{0, 0, 0};
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = narrow_i64(components_[i](n));
  return out;
}

std::string CurveSystem::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ", ";
    out += components_[i].to_string();
  }
  return out + ")";
}

SetSpec SetSpec::random(double density, std::uint64_t seed) {
  SetSpec s;
  s.kind = Kind::random;
  s.density = density;
  s.seed = seed;
  return s;
}

SetSpec SetSpec::progression(std::int64_t start, std::int64_t step) {
  SetSpec s;
  s.kind = Kind::progression;
  s.start = start;
  s.step = step;
  return s;
}

SetSpec SetSpec::explicit_points(std::vector<std::int64_t> points) {
  SetSpec s;
  s.kind = Kind::explicit_list;
  s.points = std::move(points);
  return s;
}

SetSpec SetSpec::parse(std::string_view text, std::uint64_t seed) {
  text = trim(text);
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "full" && rest.empty()) return full();
  if (head == "random") return random(parse_double(rest), seed);
  if (head == "progression") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw InvalidArgument("progression needs start:step");
    return progression(parse_i64(parts[0]), parse_i64(parts[1]));
  }
  if (head == "explicit") {
    std::vector<std::int64_t> pts;
    if (!trim(rest).empty()) {
      for (auto p : split(rest, ',')) pts.push_back(parse_i64(p));
    }
    return explicit_points(std::move(pts));
  }
  throw InvalidArgument("unknown set kind '" + std::string(text) + "'");
}

std::string SetSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::full:
      out << "full";
      break;
    case Kind::random:
      out << "random(" << density << ",seed=" << seed << ")";
      break;
    case Kind::progression:
      out << "progression(" << start << "," << step << ")";
      break;
    case Kind::explicit_list:
      out << "explicit(";
      for (std::size_t i = 0; i < points.size(); ++i) out << (i ? "," : "") << points[i];
      out << ")";
      break;
  }
  return out.str();
}

GeneratedSet make_set(const SetSpec& spec, std::int64_t radius) {
  check_radius(radius);
  std::vector<std::int64_t> pts;
  switch (spec.kind) {
    case SetSpec::Kind::full:
      for (std::int64_t n = -radius; n <= radius; ++n) pts.push_back(n);
      break;
    case SetSpec::Kind::random: {
      if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw InvalidArgument("density must lie in [0, 1]");
      std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                        static_cast<std::uint32_t>(radius), static_cast<std::uint32_t>(radius >> 32)};
      std::mt19937_64 rng(seq);
      for (std::int64_t n = -radius; n <= radius; ++n) {
        // 53 uniform bits; avoids implementation-defined distributions.
        double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        if (u < spec.density) pts.push_back(n);
      }
      break;
    }
    case SetSpec::Kind::progression:
      if (spec.step <= 0) throw InvalidArgument("progression step must be positive");
      check_point(spec.start, radius);
      for (std::int64_t n = spec.start; n <= radius; n += spec.step) pts.push_back(n);
      break;
    case SetSpec::Kind::explicit_list:
      pts = spec.points;
      break;
  }
  GeneratedSet out;
  out.sequence = WeightedSequence::indicator(radius, std::move(pts));
  out.empty = out.sequence.empty();
  out.descriptor = spec.to_string();
  return out;
}

nlohmann::json set_to_json(const WeightedSequence& seq) {
  if (!seq.is_indicator()) throw InvalidArgument("set serialization needs an indicator sequence");
  return nlohmann::json(seq.support());
}

nlohmann::json sequence_to_json(const WeightedSequence& seq) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < seq.cardinality(); ++i) {
    out.push_back({seq.support()[i], seq.weights()[i].real(), seq.weights()[i].imag()});
  }
  return out;
}

WeightedSequence set_from_json(const nlohmann::json& j, std::int64_t radius) {
  return WeightedSequence::indicator(radius, j.get<std::vector<std::int64_t>>());
}

WeightedSequence sequence_from_json(const nlohmann::json& j, std::int64_t radius) {
  std::vector<std::pair<std::int64_t, WeightedSequence::Weight>> entries;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw InvalidArgument("sequence entries are (n, re, im) triples");
    entries.emplace_back(t[0].get<std::int64_t>(), WeightedSequence::Weight(t[1].get<double>(), t[2].get<double>()));
  }
  return WeightedSequence::weighted(radius, std::move(entries));
}

}  // namespace rlab
