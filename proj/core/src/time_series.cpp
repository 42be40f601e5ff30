#include "sierpinski/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sierpinski/error.hpp"

namespace sierpinski {

std::string_view to_string(GridScheme scheme) noexcept {
  switch (scheme) {
    case GridScheme::linear: return "linear";
    case GridScheme::logarithmic: return "logarithmic";
    case GridScheme::poissonian: return "poissonian";
    case GridScheme::explicit_points: return "explicit";
  }
  return "explicit";
}

GridScheme parse_grid_scheme(std::string_view text) {
  if (text == "lin" || text == "linear") return GridScheme::linear;
  if (text == "log" || text == "logarithmic") return GridScheme::logarithmic;
  if (text == "poisson" || text == "poissonian") return GridScheme::poissonian;
  if (text == "explicit") return GridScheme::explicit_points;
  throw Error(ErrorCode::invalid_argument, "unknown grid scheme '" + std::string(text) + "'");
}

TimeGrid::TimeGrid(GridScheme scheme, std::vector<double> points, double rate, std::uint64_t seed)
    : scheme_(scheme), points_(std::move(points)), rate_(rate), seed_(seed) {
  if (points_.empty()) throw Error(ErrorCode::invalid_argument, "time grid is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || points_[i] < 0.0) {
      throw Error(ErrorCode::invalid_argument, "time points must be finite and non-negative");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "time points must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::linear(double t_min, double t_max, std::size_t count) {
  if (count == 1) return TimeGrid(GridScheme::linear, {t_min});
  if (count == 0 || !(t_max > t_min)) {
    throw Error(ErrorCode::invalid_argument, "linear grid needs t_max > t_min and count >= 1");
  }
  std::vector<double> pts(count);
  const double step = (t_max - t_min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = t_min + step * static_cast<double>(i);
  pts.back() = t_max;
  return TimeGrid(GridScheme::linear, std::move(pts));
}

TimeGrid TimeGrid::logarithmic(double t_min, double t_max, std::size_t count) {
  if (!(t_min > 0.0) || !(t_max > t_min) || count < 2) {
    throw Error(ErrorCode::invalid_argument,
                "logarithmic grid needs 0 < t_min < t_max and count >= 2");
  }
  std::vector<double> pts(count);
  const double a = std::log(t_min);
  const double step = (std::log(t_max) - a) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = std::exp(a + step * static_cast<double>(i));
  pts.front() = t_min;
  pts.back() = t_max;
  return TimeGrid(GridScheme::logarithmic, std::move(pts));
}

TimeGrid TimeGrid::poissonian(double rate, std::size_t count, std::uint64_t seed, double t_start) {
  if (!(rate > 0.0) || count == 0 || t_start < 0.0) {
    throw Error(ErrorCode::invalid_argument, "poissonian grid needs rate > 0 and count >= 1");
  }
  std::mt19937_64 engine(seed);
  std::vector<double> pts;
  pts.reserve(count);
  double t = t_start;
  while (pts.size() < count) {
    // u in (0, 1), from the top 53 bits
    const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    const double next = t - std::log(u) / rate;
    if (next > t) {
      t = next;
      pts.push_back(t);
    }
  }
  return TimeGrid(GridScheme::poissonian, std::move(pts), rate, seed);
}

TimeGrid TimeGrid::explicit_points(std::vector<double> points) {
  return TimeGrid(GridScheme::explicit_points, std::move(points));
}

TimeGrid TimeGrid::scaling_default() { return logarithmic(1e-2, 1e4, 400); }

TimeGrid TimeGrid::oscillation_default() { return linear(0.0, 200.0, 4000); }

std::string_view to_string(Observable observable) noexcept {
  switch (observable) {
    case Observable::p_kj: return "p_kj";
    case Observable::pi_kj: return "pi_kj";
    case Observable::p_bar: return "p_bar";
    case Observable::alpha_bound: return "alpha_bound";
    case Observable::pi_bar: return "pi_bar";
    case Observable::survival_q: return "survival_q";
    case Observable::survival_cl: return "survival_cl";
    case Observable::pi_cosine: return "pi_cosine";
    case Observable::alpha_dominant: return "alpha_dominant";
  }
  return "p_kj";
}

Observable parse_observable(std::string_view text) {
  for (auto o : {Observable::p_kj, Observable::pi_kj, Observable::p_bar, Observable::alpha_bound,
                 Observable::pi_bar, Observable::survival_q, Observable::survival_cl,
                 Observable::pi_cosine, Observable::alpha_dominant}) {
    if (to_string(o) == text) return o;
  }
  throw Error(ErrorCode::invalid_argument, "unknown observable '" + std::string(text) + "'");
}

double time_average(const TimeSeries& series) {
  const auto t = series.grid.points();
  const auto& v = series.values;
  if (v.size() != t.size() || v.empty()) {
    throw Error(ErrorCode::empty_series, "series is empty or misaligned with its grid");
  }
  if (v.size() == 1) return v.front();
  double area = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) area += 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1]);
  return area / (t.back() - t.front());
}

PowerLawFit fit_loglog(std::span<const double> t, std::span<const double> values, double t_lo,
                       double t_hi) {
  if (t.size() != values.size()) {
    throw Error(ErrorCode::invalid_argument, "time and value spans differ in length");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi || !(t[i] > 0.0) || !(values[i] > 0.0)) continue;
    const double x = std::log(t[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) {
    throw Error(ErrorCode::insufficient_decades,
                "fit window holds " + std::to_string(n) + " usable points");
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  PowerLawFit fit;
  fit.slope = (dn * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / dn;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.points = n;
  return fit;
}

PowerLawFit fit_loglog(const TimeSeries& series, double t_lo, double t_hi) {
  return fit_loglog(series.grid.points(), series.values, t_lo, t_hi);
}

}  // namespace sierpinski
