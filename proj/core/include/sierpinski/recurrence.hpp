#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sierpinski/time_series.hpp"

namespace sierpinski {

/// 1 - prod_{i < M} (1 - pi(t_i)). Values are clamped to [0, 1].
double polya_partial_product(std::span<const double> return_values, std::size_t samples);
double polya_partial_product(const TimeSeries& return_series, std::size_t samples);
inline double polya_partial_product(const TimeSeries& return_series) {
  return polya_partial_product(return_series, return_series.values.size());
}

/// Strict local maxima of a sampled series.
struct Envelope {
  std::vector<double> t;
  std::vector<double> values;
};
Envelope envelope_maxima(std::span<const double> t, std::span<const double> values);
Envelope envelope_maxima(const TimeSeries& series);

struct DeltaOptions {
  std::size_t bootstrap = 1000;
  double confidence = 0.95;
  std::uint64_t seed = 20240901;
  double min_decades = 3.0;
  std::size_t min_maxima = 20;
};

/// Envelope decay exponent: envelope ~ c * t^(-delta).
struct DeltaEstimate {
  double delta{};
  double ci_lo{};
  double ci_hi{};
  double log_prefactor{};
  std::size_t maxima{};
};

/// Fits the strict local maxima on log-log axes; the interval is a
/// percentile bootstrap over the maxima.
DeltaEstimate estimate_delta(const TimeSeries& return_series, const DeltaOptions& options = {});

enum class Classification { recurrent, transient, inconclusive };

std::string_view to_string(Classification c) noexcept;

/// recurrent if ci_hi <= 1, transient if ci_lo > 1, otherwise inconclusive.
Classification classify(double ci_lo, double ci_hi) noexcept;

struct RecurrenceVerdict {
  double polya_partial{};
  std::size_t samples{};
  GridScheme sampling{GridScheme::linear};
  DeltaEstimate delta;
  Classification classification{Classification::inconclusive};
};

/// Combines the sampled product over `samples` with an envelope fit of
/// `envelope_series` (usually the same walk on a logarithmic grid).
RecurrenceVerdict recurrence_verdict(const TimeSeries& samples, const TimeSeries& envelope_series,
                                     const DeltaOptions& options = {});

struct ClassicalScaling {
  PowerLawFit fit;
  double ds_fitted{};
  double ds_reference{};
  bool recurrent{};  ///< |slope| < 1
};

/// Fits p(t) ~ t^(-d_s/2) inside `window` (t_lo, t_hi). The series itself
/// must cover at least three decades.
ClassicalScaling classical_recurrence_check(const TimeSeries& return_series, double ds_reference,
                                            double t_lo, double t_hi);

}  // namespace sierpinski
