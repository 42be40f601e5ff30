#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "sierpinski/recurrence.hpp"
#include "sierpinski/spectral.hpp"
#include "sierpinski/time_series.hpp"
#include "sierpinski/trapping.hpp"

namespace sierpinski {

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// CSV `n,eigenvalue`, one row per eigenvalue in ascending order.
void write_spectrum_csv(const Eigen::VectorXd& eigenvalues, const std::filesystem::path& path);
Eigen::VectorXd read_spectrum_csv(const std::filesystem::path& path);

/// {"N", "cluster_tolerance", "clusters": [{"E", "D", "rho"}, ...]}
nlohmann::json to_json(const DegeneracySpectrum& spectrum);

/// CSV `t,value` plus a sidecar `<path>.json` carrying the observable, the
/// network identity passed in and the grid description.
void write_time_series(const TimeSeries& series, const std::filesystem::path& path,
                       const nlohmann::json& network_identity);
nlohmann::json grid_json(const TimeGrid& grid);

/// CSV `n,eps,gamma`.
void write_complex_spectrum_csv(const ComplexSpectrum& spectrum, const std::filesystem::path& path);

/// {scheme, gamma, N, N0, pi_inf, threshold, sensitivity:{lo, hi}, ...}
nlohmann::json trapping_report(const ComplexSpectrum& spectrum, const TrapConfig& config);

/// {delta_hat, ci, M, scheme, polya_partial, classification}
nlohmann::json to_json(const RecurrenceVerdict& verdict);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace sierpinski
