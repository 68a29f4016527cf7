#pragma once

#include <stdexcept>
#include <string>

namespace thermetry {

// Thrown when a result cannot be certified to the requested accuracy:
// truncation tails too large, quadrature that won't converge, counts that
// overflow exact integer range, series caps hit.
class CertificationError : public std::runtime_error {
public:
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace thermetry
