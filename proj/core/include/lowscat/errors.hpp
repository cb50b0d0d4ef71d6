#pragma once

#include <stdexcept>
#include <string>

namespace lowscat {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Malformed potential description. `path()` is a JSON-pointer-like location.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// The spec cannot be processed with the metadata it carries.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// k = 0 was passed to a finite-k routine.
class PoleError : public Error {
 public:
  PoleError()
      : Error("k = 0 is a pole of H(x;k); use the zero-energy / low-energy routines") {}
};

/// Adaptive integration could not reach the end point.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(double last_x, const std::string& what)
      : Error(what + " (last x = " + std::to_string(last_x) + ")"), last_x_(last_x) {}
  double last_x() const noexcept { return last_x_; }

 private:
  double last_x_;
};

/// A denominator vanished (transmission pole / spectral singularity).
class SpectralSingularity : public Error {
 public:
  using Error::Error;
};

/// Recursion called out of order.
class SequencingError : public Error {
 public:
  using Error::Error;
};

/// Input data contradict an identity that must hold (e.g. b1 = b2 = 0).
class ContradictionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

}  // namespace lowscat
