#pragma once

#include <stdexcept>
#include <string>

namespace gbfam {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative evaluation stopped before reaching its tolerance.
/// The last iterate is kept so callers can decide whether it is usable.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double partial)
        : std::runtime_error(what), partial_(partial) {}

    double partial_value() const noexcept { return partial_; }

private:
    double partial_;
};

}  // namespace gbfam
