#pragma once

#include <stdexcept>
#include <string>

namespace mollify {

/// Invalid user-facing configuration (bad field value, unknown signal, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its postcondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mollify
