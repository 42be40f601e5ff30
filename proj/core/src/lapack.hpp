#pragma once

#include <optional>

#include <Eigen/Dense>

namespace sierpinski::detail {

/// Eigenvalues (ascending) of a real symmetric matrix, reading the lower
/// triangle. When `vectors` is set, `a` is overwritten by the orthonormal
/// eigenvectors. Returns nullopt if dsyevd fails to converge; `a` is clobbered
/// either way.
std::optional<Eigen::VectorXd> symmetric_eigen(Eigen::MatrixXd& a, bool vectors);

struct GeneralEigen {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd right;  // empty unless requested; columns unit-norm
};

/// Dense general complex eigensolver (zgeev, with a Schur-based fallback).
GeneralEigen general_eigen(Eigen::MatrixXcd a, bool right_vectors);

}  // namespace sierpinski::detail
