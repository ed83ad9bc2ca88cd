#include "rlab/report.hpp"

#include <cmath>
#include <fstream>

#include "rlab/errors.hpp"

namespace rlab {

nlohmann::json MomentReport::to_json() const {
  nlohmann::json j;
  j["kind"] = "moment";
  j["N"] = radius;
  j["set"] = set;
  j["curve"] = curve;
  j["p"] = p;
  j["A"] = cardinality;
  if (exact) j["exact"] = to_string(*exact);
  j["moment"] = moment;
  j["bound"] = bound;
  j["ratio"] = ratio;
  j["engine"] = engine;
  j[kTimingField] = wall_seconds;
  return j;
}

double normalizing_bound(std::int64_t radius, std::size_t cardinality, std::size_t s, int degree_sum) {
  const double excess = static_cast<double>(s) - degree_sum;
  const double n_factor = std::max(1.0, std::pow(static_cast<double>(std::max<std::int64_t>(radius, 1)), excess));
  const double value = n_factor * std::pow(static_cast<double>(std::max<std::size_t>(cardinality, 1)), static_cast<double>(s));
  return value;
}

double conjectured_slope(std::size_t s, int degree_sum) {
  const double sd = static_cast<double>(s);
  return sd + std::max(0.0, sd - degree_sum);
}

nlohmann::json SlopeFit::to_json() const {
  nlohmann::json j;
  j["kind"] = "fit";
  j["log_points"] = xs;
  j["log_y"] = ys;
  j["slope"] = slope;
  j["intercept"] = intercept;
  j["residual_max"] = residual_max;
  if (conjectured) j["conjectured"] = *conjectured;
  j["tolerance"] = tolerance;
  j["within_tolerance"] = within_tolerance;
  return j;
}

SlopeFit fit_slope(std::span<const double> xs, std::span<const double> ys, std::optional<double> conjectured,
                   double tolerance) {
  if (xs.size() != ys.size()) throw InvalidArgument("fit needs paired samples");
  if (xs.size() < 2) throw InvalidArgument("fit needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("fit needs two distinct abscissae");
  SlopeFit fit;
  fit.xs.assign(xs.begin(), xs.end());
  fit.ys.assign(ys.begin(), ys.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.residual_max = std::max(fit.residual_max, std::abs(ys[i] - fit.intercept - fit.slope * xs[i]));
  }
  fit.conjectured = conjectured;
  fit.tolerance = tolerance;
  fit.within_tolerance = !conjectured || std::abs(fit.slope - *conjectured) <= tolerance;
  return fit;
}

JsonLinesWriter::JsonLinesWriter(const std::string& path, bool truncate) : path_(path) {
  if (path_.empty()) return;
  std::ofstream out(path_, truncate ? std::ios::trunc : std::ios::app);
  if (!out) throw InvalidArgument("cannot open " + path_ + " for writing");
}

void JsonLinesWriter::write(const nlohmann::json& line) {
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw InvalidArgument("cannot open " + path_ + " for writing");
  out << line.dump() << '\n';
}

}  // namespace rlab
