#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace oy {

using cd = std::complex<double>;

// Error type carried by every module. The message is formatted as
// "<module>.<op>: <reason>" so the CLI can emit machine-readable lines.
struct error : std::runtime_error {
    std::string module_op;
    std::string reason;
    error(std::string mod_op, std::string why)
        : std::runtime_error(mod_op + ": " + why),
          module_op(std::move(mod_op)),
          reason(std::move(why)) {}
};

[[noreturn]] inline void fail(const std::string& module_op, const std::string& reason) {
    throw error(module_op, reason);
}

inline constexpr double pi = 3.14159265358979323846;

} // namespace oy
