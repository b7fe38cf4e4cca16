#pragma once
#include <stdexcept>

namespace rhls {

/// Raised when the requested functional is degenerate (zero constant, empty profile).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative solver fails (implicit step, quadrature, root bracketing).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rhls
