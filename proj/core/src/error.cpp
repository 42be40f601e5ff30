#include "sierpinski/error.hpp"

namespace sierpinski {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_generation: return "invalid-generation";
    case ErrorCode::generation_too_large: return "generation-too-large";
    case ErrorCode::no_inner_hole: return "no-inner-hole";
    case ErrorCode::not_dualizable: return "not-dualizable";
    case ErrorCode::invalid_graph: return "invalid-graph";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::convergence_failure: return "convergence-failure";
    case ErrorCode::missing_eigenvectors: return "missing-eigenvectors";
    case ErrorCode::unknown_eigenvalue: return "unknown-eigenvalue";
    case ErrorCode::invalid_trap_node: return "invalid-trap-node";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::empty_series: return "empty-series";
    case ErrorCode::insufficient_decades: return "insufficient-decades";
    case ErrorCode::too_few_maxima: return "too-few-maxima";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::cache_corrupt: return "cache-corrupt";
  }
  return "unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::convergence_failure:
    case ErrorCode::too_few_maxima:
    case ErrorCode::insufficient_decades:
      return true;
    default:
      return false;
  }
}

}  // namespace sierpinski
