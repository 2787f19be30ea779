#pragma once

#include <stdexcept>
#include <string>

namespace irs {

// Error taxonomy mirrored by the CLI exit codes: config/usage -> 1,
// data -> 2, numerical -> 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace irs
