#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thermophase {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid physical or configuration input (negative temperature, bad grid,
// unknown config key, parameter out of range).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// An iterative scheme ran out of budget. Carries the best estimate so
// callers can decide whether the partial answer is still useful.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_bound, std::vector<double> history = {})
      : Error(what),
        best_estimate(best_estimate),
        error_bound(error_bound),
        history(std::move(history)) {}

  double best_estimate;          // last iterate
  double error_bound;            // last observed change / residual
  std::vector<double> history;   // iterate trail, oldest first
};

// Bracketing scan found no strict interior minimum.
class NoMinimumError : public Error {
 public:
  explicit NoMinimumError(const std::string& what) : Error(what) {}
};

// WKB order-0 construction entered a classically forbidden region.
class ForbiddenRegionError : public DomainError {
 public:
  ForbiddenRegionError(const std::string& what, double r_at, double v_at,
                       double epsilon)
      : DomainError(what), r_at(r_at), v_at(v_at), epsilon(epsilon) {}

  double r_at;      // grid point where epsilon <= V (bohr)
  double v_at;      // potential there (hartree)
  double epsilon;   // requested energy (hartree)
};

}  // namespace thermophase
