#ifndef DICKE_ERRORS_HPP
#define DICKE_ERRORS_HPP

#include <stdexcept>

namespace dicke
{
// Precondition violations are reported as std::invalid_argument.

/// An eigensolver failed to converge or a propagated state lost normalization.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A time grid is too coarse to resolve the ~1/N squeezing timescale.
class GridResolutionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace dicke

#endif // DICKE_ERRORS_HPP
