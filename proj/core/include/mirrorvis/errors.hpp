#pragma once

#include <stdexcept>
#include <string>

namespace mirrorvis {

/// Input violates a parameter invariant or a configuration schema rule.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Configuration file problem; `key()` names the offending entry when known.
class ConfigError : public ParameterError {
 public:
  ConfigError(std::string key, const std::string& what)
      : ParameterError(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Integration diverged, a quadrature failed to converge, or a quantity that
/// must be real came out complex.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mirrorvis
