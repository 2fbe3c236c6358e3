#ifndef DPPNET_ERRORS_HPP
#define DPPNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dppnet {

// Invalid configuration or parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite inputs or numerically invalid state.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dppnet

#endif
