#pragma once

#include <stdexcept>
#include <string>

namespace vpreval {

// Base error for everything the library raises.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed dataset layout, invalid technique parameters,
// out-of-range configuration. CLI maps these to exit code 1.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Failure while evaluating an otherwise valid configuration. CLI maps these
// to exit code 2.
class EvalError : public Error {
public:
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

}  // namespace vpreval
