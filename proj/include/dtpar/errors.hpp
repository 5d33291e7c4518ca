#pragma once

#include <stdexcept>
#include <string>

namespace dtpar {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Newton's method exhausted its iteration budget.
struct NonConvergence : Error {
    NonConvergence(const std::string& msg, int iters, double residual_norm)
        : Error(msg), iterations(iters), residual(residual_norm) {}
    int iterations;
    double residual;
};

// Linear solve inside Newton failed (singular or badly scaled matrix).
struct SingularJacobian : Error {
    explicit SingularJacobian(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

}  // namespace dtpar
