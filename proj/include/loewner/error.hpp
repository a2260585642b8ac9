#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

enum class ErrorCode {
  InvalidArgument = 1,
  Domain,
  Dimension,
  Hypothesis,
  Convergence,
  Io,
  Parse,
};

// Base of every error raised by the library. Inequality failures are never
// errors; they are reported through Certificate::holds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorCode::Dimension, what) {}
};

// A precondition of an inequality (sandwich bounds, unitality, kernel
// ordering, function class) is not met; the check refuses to run.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what) : Error(ErrorCode::Hypothesis, what) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorCode::Convergence, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

}  // namespace loewner
