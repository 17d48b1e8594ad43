#pragma once

#include <stdexcept>
#include <string>

namespace automorph {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested at (or numerically on top of) a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative or adaptive method gave up. Carries its best estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_re, double partial_im, double err)
      : Error(what), partial_re_(partial_re), partial_im_(partial_im), error_(err) {}

  double partial_real() const noexcept { return partial_re_; }
  double partial_imag() const noexcept { return partial_im_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double partial_re_;
  double partial_im_;
  double error_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public IoError {
 public:
  using IoError::IoError;
};

class ChecksumError : public IoError {
 public:
  using IoError::IoError;
};

class VersionError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace automorph
