#pragma once

#include <stdexcept>
#include <string>

namespace pld {

// configuration/validation problems; the CLI maps these to exit code 2
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// a configured feasibility cap was exceeded; the CLI maps these to exit code 3
struct CapError : std::runtime_error {
    explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pld
