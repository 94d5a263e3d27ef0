#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace harmext {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed boundary data or configuration values.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Exponent outside [1, inf].
class UnsupportedExponent : public Error {
public:
  using Error::Error;
};

/// Evaluation point outside the open unit disk.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A quantity like f_t / r was requested at the origin.
class SingularPoint : public Error {
public:
  using Error::Error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

/// Missing constants or certificates that a checker needs.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature ran out of budget. Carries the best estimate so far.
class ConvergenceFailure : public Error {
public:
  ConvergenceFailure(const std::string &what, std::complex<double> best,
                     double residual)
      : Error(what), best_(best), residual_(residual) {}

  std::complex<double> best_estimate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

private:
  std::complex<double> best_;
  double residual_;
};

/// The Jacobian is not positive at a sampled point.
class SenseViolation : public Error {
public:
  SenseViolation(const std::string &what, std::complex<double> point,
                 double jacobian)
      : Error(what), point_(point), jacobian_(jacobian) {}

  std::complex<double> point() const noexcept { return point_; }
  double jacobian() const noexcept { return jacobian_; }

private:
  std::complex<double> point_;
  double jacobian_;
};

} // namespace harmext
