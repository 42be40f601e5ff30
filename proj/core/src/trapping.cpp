#include "sierpinski/trapping.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "lapack.hpp"
#include "sierpinski/error.hpp"

namespace sierpinski {

namespace {

// Rank of the Krylov space generated by L from the trap vectors, mod p.
class ModularKrylov {
public:
  ModularKrylov(const Laplacian& laplacian, std::uint64_t prime)
      : p_(prime), n_(laplacian.dimension()) {
    const auto& a = laplacian.sparse();
    cols_.resize(n_);
    for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it) {
        const auto value = static_cast<std::int64_t>(std::llround(it.value()));
        cols_[static_cast<std::size_t>(it.col())].push_back(
            {static_cast<std::size_t>(it.row()), reduce(value)});
      }
    }
  }

  std::size_t rank(std::span<const std::size_t> seeds) {
    std::vector<std::vector<std::uint64_t>> block;
    for (auto m : seeds) {
      std::vector<std::uint64_t> e(n_, 0);
      e[m] = 1;
      block.push_back(std::move(e));
    }
    while (!block.empty()) {
      std::vector<std::vector<std::uint64_t>> next;
      for (auto& v : block) {
        if (insert(v)) next.push_back(apply(rows_.back()));
      }
      block = std::move(next);
    }
    return rows_.size();
  }

private:
  struct Entry {
    std::size_t row;
    std::uint64_t value;
  };

  std::uint64_t reduce(std::int64_t x) const {
    const auto p = static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(((x % p) + p) % p);
  }

  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }

  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const {
    std::vector<std::uint64_t> y(n_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!x[j]) continue;
      for (const auto& e : cols_[j]) y[e.row] = (y[e.row] + e.value * x[j]) % p_;
    }
    return y;
  }

  // Rows are kept with a unit pivot and zeros before it, so one forward sweep reduces v.
  bool insert(std::vector<std::uint64_t>& v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      const std::uint64_t a = v[c];
      if (!a) continue;
      const std::uint64_t factor = p_ - a;
      const auto& b = rows_[k];
      for (std::size_t i = c; i < n_; ++i) {
        if (b[i]) v[i] = (v[i] + factor * b[i]) % p_;
      }
    }
    const auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    if (it == v.end()) return false;
    const auto c = static_cast<std::size_t>(it - v.begin());
    const std::uint64_t scale = inverse(v[c]);
    for (std::size_t i = c; i < n_; ++i) v[i] = v[i] * scale % p_;
    rows_.push_back(std::move(v));
    pivots_.push_back(c);
    return true;
  }

  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::string_view to_string(TrapScheme scheme) noexcept {
  switch (scheme) {
    case TrapScheme::outer_corners: return "outer";
    case TrapScheme::inner_hole_corners: return "inner";
    case TrapScheme::explicit_nodes: return "explicit";
  }
  return "explicit";
}

TrapScheme parse_trap_scheme(std::string_view text) {
  if (text == "outer" || text == "outer_corners") return TrapScheme::outer_corners;
  if (text == "inner" || text == "inner_hole_corners") return TrapScheme::inner_hole_corners;
  if (text == "explicit" || text == "explicit_nodes") return TrapScheme::explicit_nodes;
  throw Error(ErrorCode::invalid_argument, "unknown trap scheme '" + std::string(text) + "'");
}

std::string_view to_string(ZeroCriterion c) noexcept {
  return c == ZeroCriterion::refined ? "refined" : "raw";
}

ZeroCriterion parse_zero_criterion(std::string_view text) {
  if (text == "refined") return ZeroCriterion::refined;
  if (text == "raw") return ZeroCriterion::raw;
  throw Error(ErrorCode::invalid_argument, "unknown zero criterion '" + std::string(text) + "'");
}

void validate_traps(const TrapConfig& config, std::size_t node_count) {
  if (!std::isfinite(config.gamma) || config.gamma < 0.0) {
    throw Error(ErrorCode::invalid_argument, "trapping rate must be finite and non-negative");
  }
  std::vector<std::size_t> sorted = config.nodes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= node_count) {
      throw Error(ErrorCode::invalid_trap_node,
                  "trap node " + std::to_string(sorted[i]) + " outside [0, " +
                      std::to_string(node_count) + ")");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw Error(ErrorCode::invalid_trap_node,
                  "trap node " + std::to_string(sorted[i]) + " listed twice");
    }
  }
}

TrapConfig resolve_traps(const Network& network, TrapScheme scheme, double gamma,
                         std::vector<std::size_t> explicit_nodes) {
  TrapConfig config{scheme, gamma, {}};
  switch (scheme) {
    case TrapScheme::outer_corners:
      config.nodes = node_roles(network).outer;
      if (config.nodes.empty()) {
        throw Error(ErrorCode::invalid_trap_node, "network defines no outer corners");
      }
      break;
    case TrapScheme::inner_hole_corners:
      config.nodes = inner_hole_corners(network);
      break;
    case TrapScheme::explicit_nodes:
      if (explicit_nodes.empty()) {
        throw Error(ErrorCode::invalid_trap_node, "explicit scheme needs at least one node");
      }
      config.nodes = std::move(explicit_nodes);
      break;
  }
  validate_traps(config, network.node_count());
  return config;
}

Eigen::MatrixXcd effective_hamiltonian(const Laplacian& laplacian, const TrapConfig& config) {
  validate_traps(config, laplacian.dimension());
  Eigen::MatrixXcd h = laplacian.dense().cast<std::complex<double>>();
  for (auto m : config.nodes) {
    const auto i = static_cast<Eigen::Index>(m);
    h(i, i) -= std::complex<double>(0.0, config.gamma);
  }
  return h;
}

std::size_t ComplexSpectrum::count_below(double cutoff) const {
  const auto& metric = threshold.criterion == ZeroCriterion::refined ? gamma_refined : gamma;
  return static_cast<std::size_t>((metric.array() < cutoff).count());
}

ComplexSpectrum complex_spectrum(const Laplacian& laplacian, const TrapConfig& config,
                                 const ComplexSolveOptions& options) {
  const auto n = laplacian.dimension();
  if (n > options.max_nodes) {
    throw Error(ErrorCode::budget_exceeded,
                "N=" + std::to_string(n) + " exceeds the complex solver budget of " +
                    std::to_string(options.max_nodes));
  }
  const bool vectors =
      options.keep_vectors || options.threshold.criterion == ZeroCriterion::refined;
  auto eig = detail::general_eigen(effective_hamiltonian(laplacian, config), vectors);

  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXd eps = eig.values.real();
  Eigen::VectorXd gamma = -eig.values.imag();
  Eigen::VectorXd refined = Eigen::VectorXd::Zero(size);
  if (vectors) {
    for (Eigen::Index k = 0; k < size; ++k) {
      const double norm2 = eig.right.col(k).squaredNorm();
      double trap_weight = 0.0;
      for (auto m : config.nodes) trap_weight += std::norm(eig.right(static_cast<Eigen::Index>(m), k));
      refined(k) = config.gamma * trap_weight / norm2;
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (eps(a) != eps(b)) return eps(a) < eps(b);
    return gamma(a) < gamma(b);
  });

  ComplexSpectrum out;
  out.eps.resize(size);
  out.gamma.resize(size);
  out.gamma_refined.resize(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    out.eps(k) = eps(order[static_cast<std::size_t>(k)]);
    out.gamma(k) = gamma(order[static_cast<std::size_t>(k)]);
    out.gamma_refined(k) = refined(order[static_cast<std::size_t>(k)]);
  }
  if (options.keep_vectors) {
    Eigen::MatrixXcd right(size, size);
    for (Eigen::Index k = 0; k < size; ++k) right.col(k) = eig.right.col(order[static_cast<std::size_t>(k)]);
    out.right = std::move(right);
  }

  out.threshold = options.threshold;
  out.trap_rate = config.gamma;
  out.trap_count = config.nodes.size();
  const double cutoff = options.threshold.absolute(config.gamma);
  const auto& metric =
      options.threshold.criterion == ZeroCriterion::refined ? out.gamma_refined : out.gamma;
  out.vanishing.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.vanishing[k] = metric(static_cast<Eigen::Index>(k)) < cutoff;
  out.n0 = out.count_below(cutoff);
  out.n0_lo = out.count_below(cutoff / 10.0);
  out.n0_hi = out.count_below(cutoff * 10.0);
  if (options.exact_count && config.gamma > 0.0) {
    out.n0_exact = dark_state_count(laplacian, config.nodes);
  }
  return out;
}

std::size_t dark_state_count(const Laplacian& laplacian, std::span<const std::size_t> traps) {
  const auto n = laplacian.dimension();
  TrapConfig check{TrapScheme::explicit_nodes, 1.0, {traps.begin(), traps.end()}};
  validate_traps(check, n);
  if (traps.empty()) return n;
  // A rank mod p never exceeds the rational rank; two primes guard against an unlucky one.
  std::size_t rank = 0;
  for (std::uint64_t prime : {2147483647ULL, 2147483629ULL}) {
    ModularKrylov krylov(laplacian, prime);
    rank = std::max(rank, krylov.rank(traps));
  }
  return n - rank;
}

TimeSeries survival_quantum(const ComplexSpectrum& spectrum, const TimeGrid& grid) {
  const double n = static_cast<double>(spectrum.size());
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    double sum = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      if (spectrum.vanishing[k]) {
        sum += 1.0;
      } else {
        sum += std::exp(-2.0 * std::max(spectrum.gamma(static_cast<Eigen::Index>(k)), 0.0) * t);
      }
    }
    values.push_back(sum / n);
  }
  return {grid, std::move(values), Observable::survival_q};
}

TimeSeries survival_quantum_exact(const ComplexSpectrum& spectrum, const TimeGrid& grid) {
  if (!spectrum.right) {
    throw Error(ErrorCode::missing_eigenvectors,
                "exact survival needs the right eigenvectors of H_eff");
  }
  const auto& r = *spectrum.right;
  const auto size = r.cols();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(r);
  const Eigen::MatrixXcd s = lu.inverse();
  const Eigen::MatrixXcd gram = r.adjoint() * r;
  const Eigen::MatrixXcd dual = s * s.adjoint();
  // |exp(-iHt)|_F^2 = sum_ab G_ab K_ba exp(i (conj(E_a) - E_b) t)
  const Eigen::MatrixXcd w = gram.cwiseProduct(dual.transpose());

  Eigen::VectorXcd energy(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    const double g = spectrum.vanishing[static_cast<std::size_t>(k)] ? 0.0 : spectrum.gamma(k);
    energy(k) = {spectrum.eps(k), -g};
  }
  const double n = static_cast<double>(size);
  std::vector<double> values;
  values.reserve(grid.size());
  const std::complex<double> i{0.0, 1.0};
  for (double t : grid.points()) {
    const Eigen::VectorXcd left = (i * energy.conjugate() * t).array().exp();
    const Eigen::VectorXcd right = (-i * energy * t).array().exp();
    values.push_back((left.transpose() * w * right).value().real() / n);
  }
  return {grid, std::move(values), Observable::survival_q};
}

SurvivalLimit survival_asymptotic(const ComplexSpectrum& spectrum) {
  return {spectrum.n0, spectrum.size(), spectrum.pi_inf()};
}

ClassicalTrapSpectrum classical_trap_spectrum(const Laplacian& laplacian, const TrapConfig& config,
                                              const SolverBudget& budget) {
  validate_traps(config, laplacian.dimension());
  const auto n = laplacian.dimension();
  if (n > budget.max_with_vectors) {
    throw Error(ErrorCode::budget_exceeded,
                "N=" + std::to_string(n) + " exceeds the dense solver budget of " +
                    std::to_string(budget.max_with_vectors) + " (with eigenvectors)");
  }
  Eigen::MatrixXd m = laplacian.dense();
  for (auto node : config.nodes) {
    const auto k = static_cast<Eigen::Index>(node);
    m(k, k) += config.gamma;
  }
  Eigen::MatrixXd work = m;
  ClassicalTrapSpectrum out;
  if (auto values = detail::symmetric_eigen(work, true)) {
    out.lambda = std::move(*values);
    out.vectors = std::move(work);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::convergence_failure, "symmetric eigensolver failed to converge");
    }
    out.lambda = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  out.weights = out.vectors.colwise().sum().transpose().cwiseAbs2();
  return out;
}

TimeSeries survival_classical(const ClassicalTrapSpectrum& spectrum, const TimeGrid& grid) {
  const auto n = static_cast<double>(spectrum.lambda.size());
  const Eigen::ArrayXd lambda = spectrum.lambda.array().max(0.0);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    values.push_back(((-lambda * t).exp() * spectrum.weights.array()).sum() / n);
  }
  return {grid, std::move(values), Observable::survival_cl};
}

TimeSeries survival_classical(const Laplacian& laplacian, const TrapConfig& config,
                              const TimeGrid& grid, const SolverBudget& budget) {
  return survival_classical(classical_trap_spectrum(laplacian, config, budget), grid);
}

Eigen::VectorXd gamma_perturbative(const SpectralDecomposition& spectrum, const TrapConfig& config) {
  validate_traps(config, spectrum.size());
  const auto& phi = spectrum.eigenvectors();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(phi.cols());
  for (auto m : config.nodes) out += phi.row(static_cast<Eigen::Index>(m)).transpose().cwiseAbs2();
  return config.gamma * out;
}

}  // namespace sierpinski
