#ifndef SPR_ERRORS_HPP
#define SPR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spr {

// Bad physical or numerical input (wrong sign, out of domain, ...).
// The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// Config file problems carry the offending line when known.
// The CLI maps this to exit code 2 as well.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A solver or quadrature failed to reach its tolerance. Carries the best
// available error estimate. The CLI maps this to exit code 4.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg, double err_estimate = 0.0)
      : std::runtime_error(msg), err_estimate_(err_estimate) {}
  double err_estimate() const { return err_estimate_; }

 private:
  double err_estimate_;
};

// Requested operating point is outside the validated regime and the caller
// asked for strict checking. The CLI maps this to exit code 3.
class RegimeError : public std::runtime_error {
 public:
  explicit RegimeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spr

#endif
