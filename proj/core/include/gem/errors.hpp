#pragma once

#include <stdexcept>
#include <string>

namespace gem {

/// Invalid configuration (bad key, bad value, inconsistent schedule).
/// Carries the config-file line when it originates from a parsed file.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Non-finite value detected during integration (solver blow-up).
class NumericError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gem
