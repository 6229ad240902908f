#pragma once

#include <stdexcept>
#include <string>

namespace ruinsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Adaptive numerics failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Distribution or model parameters violate their invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

/// Configuration problem tied to a specific key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace ruinsim
