#pragma once

#include <stdexcept>
#include <string>

namespace entrans {

// Raised when an input violates an operation's contract (bad dimensions,
// unnormalized states, couplings outside the admissible range, ...).
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a numerical routine fails to meet its accuracy contract
// (eigensolver residual too large, quadrature non-convergence, ...).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entrans
