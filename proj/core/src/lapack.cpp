#include "lapack.hpp"

#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>

#include "sierpinski/error.hpp"

namespace sierpinski::detail {

std::optional<Eigen::VectorXd> symmetric_eigen(Eigen::MatrixXd& a, bool vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(a.rows());
  if (n == 0) return w;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                                         a.data(), n, w.data());
  if (info < 0) {
    throw Error(ErrorCode::convergence_failure,
                "dsyevd rejected argument " + std::to_string(-info));
  }
  if (info > 0) return std::nullopt;
  return w;
}

GeneralEigen general_eigen(Eigen::MatrixXcd a, bool right_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  GeneralEigen out;
  out.values.resize(a.rows());
  if (n == 0) return out;
  const Eigen::MatrixXcd original = a;
  if (right_vectors) out.right.resize(a.rows(), a.cols());
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', right_vectors ? 'V' : 'N', n, a.data(), n, out.values.data(),
      nullptr, 1, right_vectors ? out.right.data() : nullptr, right_vectors ? n : 1);
  if (info == 0) return out;
  if (info < 0) {
    throw Error(ErrorCode::convergence_failure, "zgeev rejected argument " + std::to_string(-info));
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> fallback(original, right_vectors);
  if (fallback.info() != Eigen::Success) {
    throw Error(ErrorCode::convergence_failure, "complex eigensolver failed to converge");
  }
  out.values = fallback.eigenvalues();
  if (right_vectors) {
    out.right = fallback.eigenvectors();
    out.right.colwise().normalize();
  }
  return out;
}

}  // namespace sierpinski::detail
