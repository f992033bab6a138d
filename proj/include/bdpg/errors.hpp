#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdpg {

/// Operand shapes do not match (vector length, matrix order, history size).
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A pivot fell below the singularity threshold during band LU.
class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(std::size_t pivot, double value)
      : std::runtime_error("singular pivot at index " + std::to_string(pivot) +
                           " (value " + std::to_string(value) + ")"),
        pivot_(pivot) {}

  std::size_t pivot() const noexcept { return pivot_; }

private:
  std::size_t pivot_;
};

/// A constructed object failed a structural self-check. Indicates a bug.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A user callback returned a non-finite value.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace bdpg
