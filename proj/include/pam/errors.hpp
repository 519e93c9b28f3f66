#pragma once

// Error taxonomy shared across modules. The CLI maps these onto process
// exit codes: ConfigError -> 2, NumericalError -> 3, CheckFailure -> 4.

#include <stdexcept>
#include <string>

namespace pam {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct CheckFailure : std::runtime_error {
  explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pam
