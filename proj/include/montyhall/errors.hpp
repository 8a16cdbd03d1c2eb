#pragma once

#include <stdexcept>
#include <string>

namespace monty {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on user-supplied data failed (bad parameter, malformed
// model, unknown preset, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// A strategy-space or table enumeration would exceed the configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, double count)
      : Error(what), count(count) {}
  double count;  // the offending size (may exceed uint64 range)
};

// Conditioning on a zero-probability (pick, opened-set) observation.
class UnreachableObservation : public Error {
 public:
  explicit UnreachableObservation(const std::string& what) : Error(what) {}
};

// The LP solver could not certify optimality within tolerance.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double primal_residual,
                double dual_residual)
      : Error(what),
        primal_residual(primal_residual),
        dual_residual(dual_residual) {}
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

}  // namespace monty
