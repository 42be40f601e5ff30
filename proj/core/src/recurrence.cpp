#include "sierpinski/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sierpinski/error.hpp"

namespace sierpinski {

namespace {

double decades(std::span<const double> t) {
  const auto first = std::find_if(t.begin(), t.end(), [](double x) { return x > 0.0; });
  if (first == t.end() || !(t.back() > *first)) return 0.0;
  return std::log10(t.back() / *first);
}

struct LineFit {
  double slope;
  double intercept;
};

std::optional<LineFit> least_squares(std::span<const double> x, std::span<const double> y,
                                     std::span<const std::size_t> pick) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto i : pick) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double n = static_cast<double>(pick.size());
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 1e-12 * n * sxx)) return std::nullopt;
  const double slope = (n * sxy - sx * sy) / denom;
  return LineFit{slope, (sy - slope * sx) / n};
}

double percentile(std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

double polya_partial_product(std::span<const double> return_values, std::size_t samples) {
  if (return_values.empty() || samples == 0) {
    throw Error(ErrorCode::empty_series, "Polya product needs at least one sample");
  }
  if (samples > return_values.size()) {
    throw Error(ErrorCode::invalid_argument,
                "requested " + std::to_string(samples) + " samples from a series of " +
                    std::to_string(return_values.size()));
  }
  double survive = 1.0;
  for (std::size_t i = 0; i < samples; ++i) {
    survive *= 1.0 - std::clamp(return_values[i], 0.0, 1.0);
  }
  return 1.0 - survive;
}

double polya_partial_product(const TimeSeries& return_series, std::size_t samples) {
  return polya_partial_product(return_series.values, samples);
}

Envelope envelope_maxima(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size()) {
    throw Error(ErrorCode::invalid_argument, "time and value spans differ in length");
  }
  Envelope env;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
      env.t.push_back(t[i]);
      env.values.push_back(values[i]);
    }
  }
  return env;
}

Envelope envelope_maxima(const TimeSeries& series) {
  return envelope_maxima(series.grid.points(), series.values);
}

DeltaEstimate estimate_delta(const TimeSeries& return_series, const DeltaOptions& options) {
  if (return_series.values.empty()) throw Error(ErrorCode::empty_series, "empty return series");
  const double span = decades(return_series.grid.points());
  if (span < options.min_decades - 1e-9) {
    throw Error(ErrorCode::insufficient_decades,
                "series spans " + std::to_string(span) + " decades, need " +
                    std::to_string(options.min_decades));
  }
  const Envelope env = envelope_maxima(return_series);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < env.t.size(); ++i) {
    if (env.t[i] > 0.0 && env.values[i] > 0.0) {
      x.push_back(std::log(env.t[i]));
      y.push_back(std::log(env.values[i]));
    }
  }
  if (x.size() < options.min_maxima) {
    throw Error(ErrorCode::too_few_maxima,
                "found " + std::to_string(x.size()) + " usable maxima, need " +
                    std::to_string(options.min_maxima));
  }

  std::vector<std::size_t> all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto fit = least_squares(x, y, all);
  if (!fit) throw Error(ErrorCode::too_few_maxima, "maxima share a single time point");

  DeltaEstimate est;
  est.delta = -fit->slope;
  est.log_prefactor = fit->intercept;
  est.maxima = x.size();

  std::mt19937_64 engine(options.seed);
  std::vector<double> boot;
  boot.reserve(options.bootstrap);
  std::vector<std::size_t> pick(x.size());
  for (std::size_t b = 0; b < options.bootstrap; ++b) {
    for (auto& p : pick) p = static_cast<std::size_t>(engine() % x.size());
    if (auto f = least_squares(x, y, pick)) boot.push_back(-f->slope);
  }
  if (boot.empty()) {
    est.ci_lo = est.ci_hi = est.delta;
  } else {
    std::sort(boot.begin(), boot.end());
    const double tail = 0.5 * (1.0 - options.confidence);
    est.ci_lo = percentile(boot, tail);
    est.ci_hi = percentile(boot, 1.0 - tail);
  }
  return est;
}

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::recurrent: return "recurrent";
    case Classification::transient: return "transient";
    case Classification::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Classification classify(double ci_lo, double ci_hi) noexcept {
  if (ci_hi <= 1.0) return Classification::recurrent;
  if (ci_lo > 1.0) return Classification::transient;
  return Classification::inconclusive;
}

RecurrenceVerdict recurrence_verdict(const TimeSeries& samples, const TimeSeries& envelope_series,
                                     const DeltaOptions& options) {
  RecurrenceVerdict v;
  v.samples = samples.values.size();
  v.polya_partial = polya_partial_product(samples);
  v.sampling = samples.grid.scheme();
  v.delta = estimate_delta(envelope_series, options);
  v.classification = classify(v.delta.ci_lo, v.delta.ci_hi);
  return v;
}

ClassicalScaling classical_recurrence_check(const TimeSeries& return_series, double ds_reference,
                                            double t_lo, double t_hi) {
  const double span = decades(return_series.grid.points());
  if (span < 3.0 - 1e-9) {
    throw Error(ErrorCode::insufficient_decades,
                "series spans " + std::to_string(span) + " decades, need 3");
  }
  ClassicalScaling out;
  out.fit = fit_loglog(return_series, t_lo, t_hi);
  out.ds_fitted = -2.0 * out.fit.slope;
  out.ds_reference = ds_reference;
  out.recurrent = std::abs(out.fit.slope) < 1.0;
  return out;
}

}  // namespace sierpinski
