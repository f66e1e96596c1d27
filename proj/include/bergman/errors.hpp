#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Numerical failure (degenerate truncation, non-PD tensor, optimizer
// divergence). The CLI maps this to exit code 3; precondition violations
// throw std::invalid_argument and map to exit code 2.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bergman
