#include "sierpinski/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lapack.hpp"
#include "sierpinski/error.hpp"

namespace sierpinski {

namespace {

Rational pow_rational(long long base, int exp) {
  boost::multiprecision::cpp_int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return Rational(r);
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
    auto v = vectors.col(col);
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) > 1e-10 * scale) {
        if (v(k) < 0) v = -v;
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(Eigen::VectorXd eigenvalues,
                                             std::optional<Eigen::MatrixXd> eigenvectors)
    : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)) {
  if (values_.size() == 0) throw Error(ErrorCode::invalid_argument, "empty spectrum");
  if (!std::is_sorted(values_.begin(), values_.end())) {
    throw Error(ErrorCode::invalid_argument, "eigenvalues must be sorted ascending");
  }
  if (vectors_ && (vectors_->rows() != values_.size() || vectors_->cols() != values_.size())) {
    throw Error(ErrorCode::invalid_argument, "eigenvector matrix has the wrong shape");
  }
}

const Eigen::MatrixXd& SpectralDecomposition::eigenvectors() const {
  if (!vectors_) {
    throw Error(ErrorCode::missing_eigenvectors, "decomposition was computed without eigenvectors");
  }
  return *vectors_;
}

double SpectralDecomposition::e_max() const noexcept { return values_(values_.size() - 1); }

double SpectralDecomposition::smallest_nonzero(double zero_tol) const {
  for (double e : values_) {
    if (e > zero_tol) return e;
  }
  throw Error(ErrorCode::invalid_argument, "spectrum has no nonzero eigenvalue");
}

SpectralDecomposition decompose(const Laplacian& laplacian, bool want_vectors,
                                const SolverBudget& budget) {
  const auto n = laplacian.dimension();
  const auto limit = want_vectors ? budget.max_with_vectors : budget.max_values_only;
  if (n > limit) {
    throw Error(ErrorCode::budget_exceeded,
                "N=" + std::to_string(n) + " exceeds the dense solver budget of " +
                    std::to_string(limit) + (want_vectors ? " (with eigenvectors)" : ""));
  }

  Eigen::MatrixXd work = laplacian.dense();
  auto values = detail::symmetric_eigen(work, want_vectors);
  if (!values) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        laplacian.dense(), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::convergence_failure, "symmetric eigensolver failed to converge");
    }
    values = solver.eigenvalues();
    if (want_vectors) work = solver.eigenvectors();
  }
  if (!want_vectors) return SpectralDecomposition(std::move(*values));
  fix_signs(work);
  return SpectralDecomposition(std::move(*values), std::move(work));
}

double default_cluster_tolerance(double e_max) noexcept {
  return std::max(1e-8, 1e-12 * e_max);
}

const EigenCluster* DegeneracySpectrum::find(double energy, std::optional<double> within) const {
  const double tol = within.value_or(std::max(tolerance, 1e-9));
  const EigenCluster* best = nullptr;
  for (const auto& c : clusters) {
    const double d = std::abs(c.energy - energy);
    if (d <= tol && (!best || d < std::abs(best->energy - energy))) best = &c;
  }
  return best;
}

std::size_t DegeneracySpectrum::multiplicity(double energy) const {
  const auto* c = find(energy);
  return c ? c->multiplicity : 0;
}

DegeneracySpectrum degeneracies(std::span<const double> sorted, std::optional<double> tolerance) {
  if (sorted.empty()) throw Error(ErrorCode::invalid_argument, "empty spectrum");
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    throw Error(ErrorCode::invalid_argument, "eigenvalues must be sorted ascending");
  }
  DegeneracySpectrum out;
  out.tolerance = tolerance.value_or(default_cluster_tolerance(sorted.back()));
  out.node_count = sorted.size();
  const double n = static_cast<double>(sorted.size());

  std::size_t begin = 0;
  while (begin < sorted.size()) {
    std::size_t end = begin + 1;
    while (end < sorted.size() && sorted[end] - sorted[end - 1] < out.tolerance) ++end;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += sorted[i];
    EigenCluster c;
    c.multiplicity = end - begin;
    c.energy = sum / static_cast<double>(c.multiplicity);
    c.rho = static_cast<double>(c.multiplicity) / n;
    const double nearest = std::round(c.energy);
    if (std::abs(c.energy - nearest) < out.tolerance) c.snapped = static_cast<long long>(nearest);
    out.clusters.push_back(c);
    begin = end;
  }
  return out;
}

DegeneracySpectrum degeneracies(const SpectralDecomposition& spectrum,
                                std::optional<double> tolerance) {
  const auto& v = spectrum.eigenvalues();
  return degeneracies(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
                      tolerance);
}

DsgDensities rho_dsg_closed_form(int g) {
  if (g < 1) throw Error(ErrorCode::invalid_generation, "generation must be >= 1");
  const Rational p = pow_rational(3, g - 1);
  const Rational denom = 2 * pow_rational(3, g);
  return {(p + 3) / denom, (p - 1) / denom};
}

double chi_lb(const DegeneracySpectrum& spectrum) {
  double sum = 0.0;
  for (const auto& c : spectrum.clusters) sum += c.rho * c.rho;
  return sum;
}

Rational chi_lb_dsg_closed_form_exact(int g) {
  if (g < 1) throw Error(ErrorCode::invalid_generation, "generation must be >= 1");
  const Rational p3 = pow_rational(3, g);
  const Rational inner = p3 * (1 + p3 / 14) + Rational(10, 7) * pow_rational(2, g) - Rational(3, 2);
  return inner / (p3 * p3);
}

double chi_lb_dsg_closed_form(int g) {
  return chi_lb_dsg_closed_form_exact(g).convert_to<double>();
}

CountingCurve counting_function(const SpectralDecomposition& spectrum,
                                std::span<const double> x_grid) {
  const auto& e = spectrum.eigenvalues();
  const double e_max = spectrum.e_max();
  const double n = static_cast<double>(e.size());
  std::vector<double> scaled(static_cast<std::size_t>(e.size()));
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    scaled[static_cast<std::size_t>(i)] = e_max > 0 ? e(i) / e_max : 0.0;
  }
  CountingCurve out;
  out.x.assign(x_grid.begin(), x_grid.end());
  out.value.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "counting-function grid must lie in [0, 1]");
    }
    // the zero mode and E_max sit at round-off distance from 0 and 1
    auto it = std::upper_bound(scaled.begin(), scaled.end(), x + 1e-12);
    out.value.push_back(static_cast<double>(it - scaled.begin()) / n);
  }
  return out;
}

}  // namespace sierpinski
