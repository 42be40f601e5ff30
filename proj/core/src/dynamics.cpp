#include "sierpinski/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "sierpinski/error.hpp"

namespace sierpinski {

namespace {

void check_node(const SpectralDecomposition& spectrum, std::size_t node) {
  if (node >= spectrum.size()) {
    throw Error(ErrorCode::invalid_argument,
                "node " + std::to_string(node) + " outside [0, " +
                    std::to_string(spectrum.size()) + ")");
  }
}

Eigen::VectorXd overlap(const SpectralDecomposition& spectrum, std::size_t k, std::size_t j) {
  const auto& phi = spectrum.eigenvectors();
  return phi.row(static_cast<Eigen::Index>(k)).cwiseProduct(phi.row(static_cast<Eigen::Index>(j)))
      .transpose();
}

}  // namespace

TimeSeries ctrw_transition(const SpectralDecomposition& spectrum, std::size_t k, std::size_t j,
                           const TimeGrid& grid) {
  check_node(spectrum, k);
  check_node(spectrum, j);
  const Eigen::VectorXd c = overlap(spectrum, k, j);
  const auto& e = spectrum.eigenvalues();
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    const double p = c.dot((-e.array() * t).exp().matrix());
    values.push_back(std::max(p, 0.0));  // round-off below zero
  }
  return {grid, std::move(values), Observable::p_kj};
}

TimeSeries ctqw_transition(const SpectralDecomposition& spectrum, std::size_t k, std::size_t j,
                           const TimeGrid& grid) {
  check_node(spectrum, k);
  check_node(spectrum, j);
  const Eigen::VectorXd c = overlap(spectrum, k, j);
  const auto& e = spectrum.eigenvalues();
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    const double re = c.dot((e.array() * t).cos().matrix());
    const double im = c.dot((e.array() * t).sin().matrix());
    values.push_back(re * re + im * im);
  }
  return {grid, std::move(values), Observable::pi_kj};
}

Eigen::VectorXd ctrw_column(const SpectralDecomposition& spectrum, std::size_t j, double t) {
  check_node(spectrum, j);
  const auto& phi = spectrum.eigenvectors();
  const auto& e = spectrum.eigenvalues();
  const Eigen::VectorXd weights =
      phi.row(static_cast<Eigen::Index>(j)).transpose().cwiseProduct((-e.array() * t).exp().matrix());
  return (phi * weights).cwiseMax(0.0);
}

Eigen::VectorXd ctqw_column(const SpectralDecomposition& spectrum, std::size_t j, double t) {
  check_node(spectrum, j);
  const auto& phi = spectrum.eigenvectors();
  const auto& e = spectrum.eigenvalues();
  const Eigen::VectorXd start = phi.row(static_cast<Eigen::Index>(j)).transpose();
  const Eigen::VectorXd re = phi * start.cwiseProduct((e.array() * t).cos().matrix());
  const Eigen::VectorXd im = phi * start.cwiseProduct((e.array() * t).sin().matrix());
  return re.cwiseAbs2() + im.cwiseAbs2();
}

TimeSeries exact_return_cosine(const SpectralDecomposition& spectrum, const TimeGrid& grid,
                               std::size_t node) {
  check_node(spectrum, node);
  const Eigen::VectorXd w =
      spectrum.eigenvectors().row(static_cast<Eigen::Index>(node)).transpose().cwiseAbs2();
  const auto& e = spectrum.eigenvalues();
  const auto n = e.size();
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    double sum = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        sum += w(a) * w(b) * std::cos((e(b) - e(a)) * t);
      }
    }
    values.push_back(sum);
  }
  return {grid, std::move(values), Observable::pi_cosine};
}

TimeSeries average_return_classical(const SpectralDecomposition& spectrum, const TimeGrid& grid) {
  const auto& e = spectrum.eigenvalues();
  const double n = static_cast<double>(e.size());
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) values.push_back((-e.array() * t).exp().sum() / n);
  return {grid, std::move(values), Observable::p_bar};
}

TimeSeries average_return_classical(const DegeneracySpectrum& dos, const TimeGrid& grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    double sum = 0.0;
    for (const auto& c : dos.clusters) sum += c.rho * std::exp(-c.energy * t);
    values.push_back(sum);
  }
  return {grid, std::move(values), Observable::p_bar};
}

TimeSeries alpha_bound(const DegeneracySpectrum& dos, const TimeGrid& grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    std::complex<double> amp{};
    for (const auto& c : dos.clusters) amp += c.rho * std::polar(1.0, -c.energy * t);
    values.push_back(std::norm(amp));
  }
  return {grid, std::move(values), Observable::alpha_bound};
}

TimeSeries average_return_quantum(const SpectralDecomposition& spectrum, const TimeGrid& grid,
                                  std::size_t max_nodes) {
  if (spectrum.size() > max_nodes) {
    throw Error(ErrorCode::budget_exceeded,
                "average quantum return needs N <= " + std::to_string(max_nodes));
  }
  // alpha_jj(t) = sum_n |<j|n>|^2 exp(-i E_n t) for all j at once
  const Eigen::MatrixXd w = spectrum.eigenvectors().cwiseAbs2();
  const auto& e = spectrum.eigenvalues();
  const double n = static_cast<double>(spectrum.size());
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    const Eigen::VectorXd re = w * (e.array() * t).cos().matrix();
    const Eigen::VectorXd im = w * (e.array() * t).sin().matrix();
    values.push_back((re.squaredNorm() + im.squaredNorm()) / n);
  }
  return {grid, std::move(values), Observable::pi_bar};
}

TimeSeries dominant_eigenvalue_approx(const DegeneracySpectrum& dos, double e_m,
                                      const TimeGrid& grid) {
  const auto* dominant = dos.find(e_m);
  if (!dominant) {
    throw Error(ErrorCode::unknown_eigenvalue,
                "E=" + std::to_string(e_m) + " is not a distinct eigenvalue of the spectrum");
  }
  const double rho_m = dominant->rho;
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    double sum = 0.0;
    for (const auto& c : dos.clusters) {
      if (&c == dominant) continue;
      sum += c.rho * std::cos((c.energy - dominant->energy) * t);
    }
    values.push_back(rho_m * rho_m + rho_m * sum);
  }
  return {grid, std::move(values), Observable::alpha_dominant};
}

double dominant_long_time_mean(const DegeneracySpectrum& dos, double e_m) {
  const auto* dominant = dos.find(e_m);
  if (!dominant) {
    throw Error(ErrorCode::unknown_eigenvalue,
                "E=" + std::to_string(e_m) + " is not a distinct eigenvalue of the spectrum");
  }
  return dominant->rho * dominant->rho;
}

std::pair<double, double> default_scaling_window(const SpectralDecomposition& spectrum) {
  return {1.0, 0.1 / spectrum.smallest_nonzero()};
}

}  // namespace sierpinski
