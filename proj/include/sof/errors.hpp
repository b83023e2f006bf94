#pragma once

#include <stdexcept>
#include <string>

namespace sof {

/// Raised when a computation fails for numerical (data-dependent) reasons:
/// singular factorizations, degenerate inputs, expectation values far
/// outside their mathematical bounds.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sof
