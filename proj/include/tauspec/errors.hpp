#ifndef TAUSPEC_ERRORS_HPP
#define TAUSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tauspec {

// All library failures derive from Error so callers can distinguish
// tauspec conditions from generic std exceptions.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An iterative scheme failed to reach its tolerance.  `estimate` carries
// the last error/tail estimate, `last` the final iterate when meaningful.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& msg, double estimate = 0.0)
      : Error(msg), estimate(estimate) {}
  double estimate;
};

// A Nekrasov denominator vanished at the requested parameters.
class PoleError : public Error {
public:
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// The requested monodromy chart is singular at the given point.
class ChartError : public Error {
public:
  explicit ChartError(const std::string& msg) : Error(msg) {}
};

// A checker was configured inconsistently (e.g. too few sum shells).
class SetupError : public Error {
public:
  explicit SetupError(const std::string& msg) : Error(msg) {}
};

// A root scan exhausted its window before finding the requested roots.
class SearchWindowError : public Error {
public:
  SearchWindowError(const std::string& msg, double lo, double hi)
      : Error(msg), window_lo(lo), window_hi(hi) {}
  double window_lo, window_hi;
};

// Resource limits (memoization bounds etc.).
class CapacityError : public Error {
public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

}  // namespace tauspec

#endif
