#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "sierpinski/fractal_graph.hpp"

namespace sierpinski {

using Rational = boost::multiprecision::cpp_rational;

/// Dense-solver limits on the matrix dimension.
struct SolverBudget {
  std::size_t max_with_vectors = 8192;
  std::size_t max_values_only = 16384;
};

/// Laplacian eigenvalues in ascending order, optionally with the orthonormal
/// eigenvectors as matrix columns.
class SpectralDecomposition {
public:
  explicit SpectralDecomposition(Eigen::VectorXd eigenvalues,
                                 std::optional<Eigen::MatrixXd> eigenvectors = std::nullopt);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  bool has_vectors() const noexcept { return vectors_.has_value(); }

  /// Throws `missing_eigenvectors` for values-only decompositions.
  const Eigen::MatrixXd& eigenvectors() const;

  double e_max() const noexcept;

  /// Smallest eigenvalue above `zero_tol` (E_2 for a connected graph).
  double smallest_nonzero(double zero_tol = 1e-9) const;

private:
  Eigen::VectorXd values_;
  std::optional<Eigen::MatrixXd> vectors_;
};

/// Diagonalizes the Laplacian with a dense symmetric solver. Eigenvectors get
/// a fixed sign: their first non-negligible component is positive.
SpectralDecomposition decompose(const Laplacian& laplacian, bool want_vectors,
                                const SolverBudget& budget = {});

/// One distinct eigenvalue E_m with its degeneracy D(E_m) and rho = D/N.
struct EigenCluster {
  double energy{};
  std::size_t multiplicity{};
  double rho{};
  /// Integer the cluster sits on (within tolerance), for reporting only.
  std::optional<long long> snapped;
};

struct DegeneracySpectrum {
  std::vector<EigenCluster> clusters;
  double tolerance{};
  std::size_t node_count{};

  /// Cluster whose representative lies within `within` (default: the
  /// clustering tolerance, at least 1e-9) of `energy`.
  const EigenCluster* find(double energy, std::optional<double> within = std::nullopt) const;

  /// Degeneracy of `energy`, zero if it is not an eigenvalue.
  std::size_t multiplicity(double energy) const;
};

/// max(1e-8, 1e-12 * E_max)
double default_cluster_tolerance(double e_max) noexcept;

/// Merges adjacent eigenvalues whose gap is below `tolerance`.
DegeneracySpectrum degeneracies(const SpectralDecomposition& spectrum,
                                std::optional<double> tolerance = std::nullopt);
DegeneracySpectrum degeneracies(std::span<const double> sorted_eigenvalues,
                                std::optional<double> tolerance = std::nullopt);

struct DsgDensities {
  Rational rho3;
  Rational rho5;
};

/// Exact rho(3) and rho(5) of the dual gasket at generation g >= 1.
DsgDensities rho_dsg_closed_form(int generation);

/// Long-time average of the lower bound: sum over distinct E_m of rho(E_m)^2.
double chi_lb(const DegeneracySpectrum& spectrum);

/// Exact long-time average for the dual gasket at generation g >= 1.
Rational chi_lb_dsg_closed_form_exact(int generation);
double chi_lb_dsg_closed_form(int generation);

struct CountingCurve {
  std::vector<double> x;
  std::vector<double> value;
};

/// Normalized cumulative count (1/N) #{n : E_n / E_max <= x} on x in [0, 1].
CountingCurve counting_function(const SpectralDecomposition& spectrum,
                                std::span<const double> x_grid);

}  // namespace sierpinski
