#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace betadens {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The sample has no spread (e.g. bandwidth selection on a constant sample).
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

class EmptyEstimate : public Error {
 public:
  using Error::Error;
};

/// A request exceeds the enumeration budget (e.g. too many conditional atoms).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside one Monte Carlo trial.
class TrialError : public Error {
 public:
  TrialError(std::size_t trial, const std::string& what)
      : Error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

  std::size_t trial() const noexcept { return trial_; }

 private:
  std::size_t trial_;
};

}  // namespace betadens
