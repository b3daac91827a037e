#ifndef PCF_ERRORS_HPP
#define PCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcf {

/// Arguments outside an operation's validity domain (e.g. v >= 0 for the
/// oracle, x + y < 0 for a product representation).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// A gamma-function argument or a recurrence divisor hit a pole.
class PoleError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Quadrature or series evaluation failed to reach the requested accuracy.
class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace pcf

#endif // PCF_ERRORS_HPP
