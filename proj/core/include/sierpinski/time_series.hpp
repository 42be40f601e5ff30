#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sierpinski {

enum class GridScheme { linear, logarithmic, poissonian, explicit_points };

std::string_view to_string(GridScheme scheme) noexcept;
GridScheme parse_grid_scheme(std::string_view text);

/// Strictly increasing, finite, non-negative sample times.
class TimeGrid {
public:
  static TimeGrid linear(double t_min, double t_max, std::size_t count);
  static TimeGrid logarithmic(double t_min, double t_max, std::size_t count);
  /// Arrival times of a Poisson process with the given rate started at
  /// `t_start`. The stream depends only on `seed` (mt19937_64 + inverse CDF).
  static TimeGrid poissonian(double rate, std::size_t count, std::uint64_t seed,
                             double t_start = 0.0);
  static TimeGrid explicit_points(std::vector<double> points);

  /// log-spaced 1e-2 .. 1e4, 400 points
  static TimeGrid scaling_default();
  /// linear 0 .. 200, 4000 points
  static TimeGrid oscillation_default();

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  GridScheme scheme() const noexcept { return scheme_; }
  double rate() const noexcept { return rate_; }
  std::uint64_t seed() const noexcept { return seed_; }

private:
  TimeGrid(GridScheme scheme, std::vector<double> points, double rate = 0.0,
           std::uint64_t seed = 0);

  GridScheme scheme_;
  std::vector<double> points_;
  double rate_;
  std::uint64_t seed_;
};

enum class Observable {
  p_kj,
  pi_kj,
  p_bar,
  alpha_bound,
  pi_bar,
  survival_q,
  survival_cl,
  pi_cosine,
  alpha_dominant,
};

std::string_view to_string(Observable observable) noexcept;
Observable parse_observable(std::string_view text);

struct TimeSeries {
  TimeGrid grid;
  std::vector<double> values;
  Observable observable;
};

/// Trapezoidal mean over [t_first, t_last].
double time_average(const TimeSeries& series);

struct PowerLawFit {
  double slope{};
  double intercept{};  ///< log(c) in value ~ c * t^slope
  double t_lo{};
  double t_hi{};
  std::size_t points{};
};

/// Least-squares line through (log t, log value) for samples in [t_lo, t_hi].
PowerLawFit fit_loglog(std::span<const double> t, std::span<const double> values, double t_lo,
                       double t_hi);
PowerLawFit fit_loglog(const TimeSeries& series, double t_lo, double t_hi);

}  // namespace sierpinski
