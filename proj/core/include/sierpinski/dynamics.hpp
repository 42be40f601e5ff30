#pragma once

#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "sierpinski/spectral.hpp"
#include "sierpinski/time_series.hpp"

namespace sierpinski {

// Classical (CTRW, T = -A) and quantum (CTQW, H = A) propagation built on the
// Laplacian eigendecomposition. Node indices are zero-based; node 0 is the
// bottom-left outer corner of every generated fractal.

/// p_{k,j}(t) = sum_n exp(-E_n t) <k|n><n|j>
TimeSeries ctrw_transition(const SpectralDecomposition& spectrum, std::size_t k, std::size_t j,
                           const TimeGrid& grid);

/// pi_{k,j}(t) = |sum_n exp(-i E_n t) <k|n><n|j>|^2
TimeSeries ctqw_transition(const SpectralDecomposition& spectrum, std::size_t k, std::size_t j,
                           const TimeGrid& grid);

/// All p_{k,j}(t) for fixed start node j.
Eigen::VectorXd ctrw_column(const SpectralDecomposition& spectrum, std::size_t j, double t);

/// All pi_{k,j}(t) for fixed start node j.
Eigen::VectorXd ctqw_column(const SpectralDecomposition& spectrum, std::size_t j, double t);

/// Return probability at `node` via the double cosine sum
/// sum_{n,m} |<node|n>|^2 |<node|m>|^2 cos((E_m - E_n) t).
TimeSeries exact_return_cosine(const SpectralDecomposition& spectrum, const TimeGrid& grid,
                               std::size_t node = 0);

/// Node-averaged classical return probability from the trace
/// (1/N) sum_n exp(-E_n t); needs eigenvalues only.
TimeSeries average_return_classical(const SpectralDecomposition& spectrum, const TimeGrid& grid);

/// Same quantity from the distinct eigenvalues: sum_m rho(E_m) exp(-E_m t).
TimeSeries average_return_classical(const DegeneracySpectrum& dos, const TimeGrid& grid);

/// Eigenstate-independent lower bound |alpha(t)|^2 = |sum_m rho(E_m) exp(-i E_m t)|^2.
TimeSeries alpha_bound(const DegeneracySpectrum& dos, const TimeGrid& grid);

/// pi_bar(t) = (1/N) sum_j pi_{j,j}(t).
TimeSeries average_return_quantum(const SpectralDecomposition& spectrum, const TimeGrid& grid,
                                  std::size_t max_nodes = 8192);

/// Single-dominant-eigenvalue approximation of |alpha(t)|^2 around E_m:
/// rho(E_m)^2 + rho(E_m) sum_{E != E_m} rho(E) cos((E - E_m) t).
/// Throws `unknown_eigenvalue` if E_m is not a cluster representative.
TimeSeries dominant_eigenvalue_approx(const DegeneracySpectrum& dos, double e_m,
                                      const TimeGrid& grid);

/// Long-time mean of the approximation above, rho(E_m)^2.
double dominant_long_time_mean(const DegeneracySpectrum& dos, double e_m);

/// Intermediate-time window [1, 0.1 / E_2] used for d_s/2 slope fits.
std::pair<double, double> default_scaling_window(const SpectralDecomposition& spectrum);

}  // namespace sierpinski
