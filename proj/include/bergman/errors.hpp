#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Invalid input: malformed configuration, schema violation, domain error.
/// The CLI maps this family to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical decision could not be certified. The CLI maps this family to
/// exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// JSON document does not match the expected schema. `path()` names the
/// offending field, e.g. "terms[1].rho.step.breaks".
class SchemaError : public ConfigError {
 public:
  SchemaError(std::string path, const std::string& what)
      : ConfigError(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A quadrature request exceeds the declared exactness budget.
class ExactnessError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Constraint degree too small for the requested reconstruction support.
class SlackError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class BudgetExceeded : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate)
      : NumericalError(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Some |omega| fell between eps_zero and 10 * eps_zero.
class AmbiguousZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Smallest equilibrated singular value landed in the indeterminate band.
class Indeterminate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The set description lies outside the classifiable algebra.
class UnknownClass : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Gram-matrix route too ill-conditioned to meet its tolerance.
class IllConditioned : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bergman
