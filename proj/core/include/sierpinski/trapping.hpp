#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sierpinski/fractal_graph.hpp"
#include "sierpinski/spectral.hpp"
#include "sierpinski/time_series.hpp"

namespace sierpinski {

enum class TrapScheme { outer_corners, inner_hole_corners, explicit_nodes };

std::string_view to_string(TrapScheme scheme) noexcept;
/// Accepts outer / inner / explicit and the full enumerator names.
TrapScheme parse_trap_scheme(std::string_view text);

struct TrapConfig {
  TrapScheme scheme{TrapScheme::outer_corners};
  double gamma{1.0};
  std::vector<std::size_t> nodes;
};

/// Resolves the trap nodes of `scheme` on `network`. `explicit_nodes` is used
/// only for the explicit scheme.
TrapConfig resolve_traps(const Network& network, TrapScheme scheme, double gamma = 1.0,
                         std::vector<std::size_t> explicit_nodes = {});

/// Throws `invalid_trap_node` for duplicates or out-of-range nodes and
/// `invalid_argument` for a negative or non-finite rate.
void validate_traps(const TrapConfig& config, std::size_t node_count);

/// H_eff = L - i Gamma sum_m |m><m|, dense.
Eigen::MatrixXcd effective_hamiltonian(const Laplacian& laplacian, const TrapConfig& config);

/// How a decay rate is judged to vanish.
///  - refined: Gamma * sum_m |R(m)|^2 / |R|^2 from the right eigenvector R,
///    which equals gamma_n exactly but keeps its accuracy for tiny rates;
///  - raw: -Im(E_n) as returned by the eigensolver.
enum class ZeroCriterion { refined, raw };

std::string_view to_string(ZeroCriterion c) noexcept;
ZeroCriterion parse_zero_criterion(std::string_view text);

struct ZeroThreshold {
  ZeroCriterion criterion{ZeroCriterion::refined};
  double relative{1e-20};  ///< cutoff in units of Gamma

  static ZeroThreshold raw_default() { return {ZeroCriterion::raw, 1e-10}; }
  double absolute(double gamma) const noexcept { return gamma > 0.0 ? relative * gamma : relative; }
};

struct ComplexSolveOptions {
  ZeroThreshold threshold{};
  std::size_t max_nodes = 6000;
  bool keep_vectors = false;
  bool exact_count = true;  ///< also run dark_state_count
};

/// Eigenvalues E_n = eps_n - i gamma_n of H_eff, sorted by (eps, gamma).
struct ComplexSpectrum {
  Eigen::VectorXd eps;
  Eigen::VectorXd gamma;          ///< -Im(E_n)
  Eigen::VectorXd gamma_refined;  ///< trap weight of the right eigenvector times Gamma
  std::vector<bool> vanishing;
  ZeroThreshold threshold;
  double trap_rate{};
  std::size_t trap_count{};
  std::size_t n0{};
  std::size_t n0_lo{};  ///< count at threshold / 10
  std::size_t n0_hi{};  ///< count at threshold * 10
  std::optional<std::size_t> n0_exact;  ///< threshold-free dark-state count
  std::optional<Eigen::MatrixXcd> right;  ///< columns follow the sorted order

  std::size_t size() const noexcept { return static_cast<std::size_t>(eps.size()); }
  double pi_inf() const noexcept { return static_cast<double>(n0) / static_cast<double>(size()); }
  bool threshold_stable() const noexcept { return n0_lo == n0 && n0_hi == n0; }
  /// Number of rates below `cutoff` under the stored criterion.
  std::size_t count_below(double cutoff) const;
};

ComplexSpectrum complex_spectrum(const Laplacian& laplacian, const TrapConfig& config,
                                 const ComplexSolveOptions& options = {});

/// Dimension of the largest L-invariant subspace vanishing on every trap,
/// i.e. the number of eigenvalues of H_eff with exactly zero imaginary part
/// for any Gamma > 0. Computed as N minus the rank of the Krylov space
/// spanned by L^k |m>, in modular arithmetic over two large primes.
std::size_t dark_state_count(const Laplacian& laplacian, std::span<const std::size_t> traps);

/// Pi(t) = (1/N) sum_n exp(-2 gamma_n t), vanishing rates set to zero.
TimeSeries survival_quantum(const ComplexSpectrum& spectrum, const TimeGrid& grid);

/// (1/N) |exp(-i H_eff t)|_F^2 through the biorthogonal expansion. Needs the
/// right eigenvectors (ComplexSolveOptions::keep_vectors).
TimeSeries survival_quantum_exact(const ComplexSpectrum& spectrum, const TimeGrid& grid);

struct SurvivalLimit {
  std::size_t n0{};
  std::size_t n{};
  double value{};
};

SurvivalLimit survival_asymptotic(const ComplexSpectrum& spectrum);

/// Spectrum of L + Gamma sum_m |m><m| (that is, -T_eff).
struct ClassicalTrapSpectrum {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd weights;  ///< |sum_j <j|Psi_n>|^2
};

ClassicalTrapSpectrum classical_trap_spectrum(const Laplacian& laplacian, const TrapConfig& config,
                                              const SolverBudget& budget = {});

/// P(t) = (1/N) sum_n exp(-lambda_n t) w_n.
TimeSeries survival_classical(const ClassicalTrapSpectrum& spectrum, const TimeGrid& grid);
TimeSeries survival_classical(const Laplacian& laplacian, const TrapConfig& config,
                              const TimeGrid& grid, const SolverBudget& budget = {});

/// First-order rates Gamma * sum_m |<m|Phi_n>|^2 from the untrapped eigenstates.
Eigen::VectorXd gamma_perturbative(const SpectralDecomposition& spectrum, const TrapConfig& config);

}  // namespace sierpinski
