#pragma once

#include <stdexcept>
#include <string>

namespace pairgen {

// Bad input file, missing key, unit-less physical quantity, unknown mode name.
// CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Root finding, quadrature or model failure at runtime. CLI maps to exit code 1.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Requested mode is below cutoff at the given frequency/diameter.
struct NotGuidedError : NumericalError {
    explicit NotGuidedError(const std::string& what) : NumericalError(what) {}
};

// Outer JSA grid clips a non-negligible part of the amplitude.
struct GridTruncationError : NumericalError {
    explicit GridTruncationError(const std::string& what) : NumericalError(what) {}
};

// Evaluation outside a model's stated validity window.
struct DomainError : NumericalError {
    explicit DomainError(const std::string& what) : NumericalError(what) {}
};

} // namespace pairgen
