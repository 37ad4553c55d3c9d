#pragma once

#include <stdexcept>
#include <string>

namespace zm {

// Bad argument values (negative radius, j < 0, ...).
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operands defined on incompatible grids / dimensions.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation outside its physical regime (e.g. B0 = 0 for the sign rule).
struct regime_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Gauge samples do not cover the geometry they are applied to.
struct coverage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative solver exceeded its budget; carries the final residual.
struct solver_failure : std::runtime_error {
    solver_failure(const std::string& what, double residual_)
        : std::runtime_error(what), residual(residual_) {}
    double residual;
};

} // namespace zm
