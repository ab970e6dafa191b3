#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace haptofv {

/// Newton iteration exhausted its iteration cap without reaching the
/// residual tolerance.
class NewtonDivergence : public std::runtime_error {
public:
  NewtonDivergence(int iterations, double residual_norm)
      : std::runtime_error("Newton diverged: residual " +
                           std::to_string(residual_norm) + " after " +
                           std::to_string(iterations) + " iterations"),
        iterations(iterations), residual_norm(residual_norm) {}

  int iterations;
  double residual_norm;
};

/// Linear solver breakdown (zero pivot, stagnation below the requested
/// residual bound on both the iterative and direct paths).
class SingularJacobian : public std::runtime_error {
public:
  explicit SingularJacobian(const std::string& what)
      : std::runtime_error("singular Jacobian: " + what) {}
};

/// A state field left its admissible interval by more than the monitoring
/// tolerance. Carries the first offending cell.
class BoundViolationError : public std::runtime_error {
public:
  BoundViolationError(std::size_t cell, char field, double value)
      : std::runtime_error(std::string("bound violation: field ") + field +
                           " = " + std::to_string(value) + " at cell " +
                           std::to_string(cell)),
        cell(cell), field(field), value(value) {}

  std::size_t cell;
  char field;
  double value;
};

} // namespace haptofv
