#ifndef WG_ERRORS_HPP
#define WG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wg {

/// Invalid user-facing configuration (bad k, non-SPD kappa, level out of range, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken or degenerate mesh data.
struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// Factorization breakdown or iterative non-convergence.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wg

#endif
