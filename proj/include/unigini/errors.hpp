#pragma once

#include <stdexcept>
#include <string>

namespace unigini {

// Environment/config faults: unreadable files, malformed configs, bad flags.
// CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Data-level failures: invalid observations, unknown countries, undefined
// statistics. CLI maps these to exit code 1.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace unigini
