#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sierpinski {

/// Machine-readable failure categories shared by every module.
enum class ErrorCode {
  invalid_generation,
  generation_too_large,
  no_inner_hole,
  not_dualizable,
  invalid_graph,
  budget_exceeded,
  convergence_failure,
  missing_eigenvectors,
  unknown_eigenvalue,
  invalid_trap_node,
  invalid_argument,
  empty_series,
  insufficient_decades,
  too_few_maxima,
  io_error,
  cache_corrupt,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of the numerical machinery (as opposed to bad input).
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace sierpinski
