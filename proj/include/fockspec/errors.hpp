// errors.hpp - exception taxonomy shared by the library and the CLI exit codes
#pragma once

#include <stdexcept>
#include <string>

namespace fockspec {

// bad user input: unknown keys, malformed config, unparsable values
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// mathematically invalid request: z inside the band, divergent integral,
// parameters outside the model's domain
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// refusal on size/memory guards
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// non-finite values, iteration caps, failed order estimation
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fockspec
