#pragma once

#include <stdexcept>
#include <string>

namespace wigsim {

/// Invalid or inconsistent user-supplied configuration (bad config file,
/// malformed preset, unusable grid geometry, missing keys). CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime numerical failure (instability, domain overflow, non-finite
/// values). CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wigsim
