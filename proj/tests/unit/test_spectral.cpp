#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sierpinski/error.hpp"
#include "sierpinski/spectral.hpp"

using namespace sierpinski;

namespace {

SpectralDecomposition spectrum_of(FractalKind kind, int g, bool vectors = false) {
  return decompose(laplacian(generate(kind, g)), vectors);
}

bool same_fraction(std::size_t count, std::size_t n, long long num, long long den) {
  return static_cast<long long>(count) * den == num * static_cast<long long>(n);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("K3 spectrum") {
  const auto s = spectrum_of(FractalKind::SG, 1);
  REQUIRE(s.size() == 3);
  CHECK(s.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.eigenvalues()(1) == doctest::Approx(3.0));
  CHECK(s.eigenvalues()(2) == doctest::Approx(3.0));
  CHECK(s.e_max() == doctest::Approx(3.0));
  CHECK(s.smallest_nonzero() == doctest::Approx(3.0));
}

TEST_CASE("eigenpairs agree with an independent solver") {
  for (auto [kind, g] : {std::pair{FractalKind::SG, 4}, {FractalKind::DSC, 2},
                         {FractalKind::SC, 3}, {FractalKind::DSG, 4}}) {
    const auto lap = laplacian(generate(kind, g));
    const auto s = decompose(lap, true);
    const auto ref = oracle::eigh(lap.dense());
    CHECK((s.eigenvalues() - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    const auto& v = s.eigenvectors();
    const auto n = v.rows();
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((lap.dense() * v - v * s.eigenvalues().asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
    const auto values_only = decompose(lap, false);
    CHECK_FALSE(values_only.has_vectors());
    CHECK((values_only.eigenvalues() - s.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("eigenvector sign convention") {
  const auto s = spectrum_of(FractalKind::SG, 3, true);
  const auto& v = s.eigenvectors();
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index i = 0;
    while (std::abs(v(i, c)) < 1e-10) ++i;
    CHECK(v(i, c) > 0.0);
  }
}

TEST_CASE("degeneracies from the tables") {
  CHECK(degeneracies(spectrum_of(FractalKind::SG, 3)).multiplicity(6.0) == 3);
  const auto dsg2 = degeneracies(spectrum_of(FractalKind::DSG, 2));
  CHECK(dsg2.multiplicity(3.0) == 3);
  CHECK(dsg2.multiplicity(5.0) == 1);
  CHECK(dsg2.find(3.0)->rho == doctest::Approx(1.0 / 3.0));

  const auto dsg4 = degeneracies(spectrum_of(FractalKind::DSG, 4));
  CHECK(same_fraction(dsg4.multiplicity(3.0), 81, 5, 27));
  CHECK(same_fraction(dsg4.multiplicity(5.0), 81, 13, 81));
  CHECK(same_fraction(degeneracies(spectrum_of(FractalKind::SC, 3)).multiplicity(4.0), 96, 6, 96));
  CHECK(same_fraction(degeneracies(spectrum_of(FractalKind::DSC, 3)).multiplicity(3.0), 512, 4, 512));
  CHECK(degeneracies(spectrum_of(FractalKind::SG, 2)).multiplicity(6.0) == 0);
}

TEST_CASE("cluster bookkeeping") {
  const auto dos = degeneracies(spectrum_of(FractalKind::SC, 3));
  std::size_t total = 0;
  double rho = 0.0;
  for (const auto& c : dos.clusters) {
    total += c.multiplicity;
    rho += c.rho;
  }
  CHECK(total == 96);
  CHECK(rho == doctest::Approx(1.0));
  CHECK(dos.tolerance == doctest::Approx(default_cluster_tolerance(dos.clusters.back().energy)));
  CHECK(dos.find(4.5) == nullptr);

  const double values[] = {0.0, 1.0, 1.0 + 1e-12, 2.0};
  const auto manual = degeneracies(values);
  CHECK(manual.clusters.size() == 3);
  CHECK(manual.multiplicity(1.0) == 2);
}

TEST_CASE("DSG closed-form densities") {
  const auto g2 = rho_dsg_closed_form(2);
  CHECK(g2.rho3 == Rational(1, 3));
  CHECK(g2.rho5 == Rational(1, 9));
  const auto g8 = rho_dsg_closed_form(8);
  CHECK(g8.rho3 == Rational(365, 2187));
  CHECK(g8.rho5 == Rational(1093, 6561));
  const auto far = rho_dsg_closed_form(60);
  CHECK(std::abs(static_cast<double>(far.rho3) - 1.0 / 6.0) < 1e-12);
  CHECK(std::abs(static_cast<double>(far.rho5) - 1.0 / 6.0) < 1e-12);

  for (int g = 2; g <= 6; ++g) {
    const auto dos = degeneracies(spectrum_of(FractalKind::DSG, g));
    const auto closed = rho_dsg_closed_form(g);
    const auto n = static_cast<long long>(dos.node_count);
    CHECK(Rational(static_cast<long long>(dos.multiplicity(3.0)), n) == closed.rho3);
    CHECK(Rational(static_cast<long long>(dos.multiplicity(5.0)), n) == closed.rho5);
  }
}

TEST_CASE("chi_lb") {
  const double single[] = {0.0};
  CHECK(chi_lb(degeneracies(single)) == doctest::Approx(1.0));
  CHECK(chi_lb(degeneracies(spectrum_of(FractalKind::SG, 1))) == doctest::Approx(5.0 / 9.0));
  CHECK(std::abs(chi_lb(degeneracies(spectrum_of(FractalKind::DSG, 3))) - 0.1221) < 5e-5);
}

TEST_CASE("closed-form chi_lb") {
  CHECK(std::abs(chi_lb_dsg_closed_form(2) - 0.2346) < 5e-5);
  CHECK(std::abs(chi_lb_dsg_closed_form(8) - 0.0716) < 5e-5);
  CHECK(std::abs(chi_lb_dsg_closed_form(40) - 1.0 / 14.0) < 1e-9);
  for (int g = 2; g <= 5; ++g) {
    const double spectral = chi_lb(degeneracies(spectrum_of(FractalKind::DSG, g)));
    CHECK(std::abs(chi_lb_dsg_closed_form(g) - spectral) < 1e-6);
    CHECK(static_cast<double>(chi_lb_dsg_closed_form_exact(g)) ==
          doctest::Approx(chi_lb_dsg_closed_form(g)).epsilon(1e-14));
  }
  // 3^{-2g}[3^g(1 + 3^g/14) + (10/7) 2^g - 3/2] at g = 3
  const Rational expected = (Rational(27) * (1 + Rational(27, 14)) + Rational(10, 7) * 8 -
                             Rational(3, 2)) / 729;
  CHECK(chi_lb_dsg_closed_form_exact(3) == expected);
}

TEST_CASE("counting function") {
  const auto s = spectrum_of(FractalKind::SC, 3);
  std::vector<double> x;
  for (int i = 0; i <= 100; ++i) x.push_back(i / 100.0);
  const auto c = counting_function(s, x);
  CHECK(c.value.front() == doctest::Approx(1.0 / 96.0));
  CHECK(c.value.back() == doctest::Approx(1.0));
  CHECK(std::is_sorted(c.value.begin(), c.value.end()));
}

TEST_CASE("solver errors") {
  const auto lap = laplacian(generate(FractalKind::SG, 4));
  SolverBudget tight;
  tight.max_with_vectors = 10;
  tight.max_values_only = 10;
  try {
    decompose(lap, true, tight);
    FAIL("expected budget-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
  const auto s = decompose(lap, false);
  try {
    (void)s.eigenvectors();
    FAIL("expected missing-eigenvectors");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_eigenvectors);
  }
}

}
