#pragma once

#include <stdexcept>
#include <string>

namespace gstlab {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : Error { using Error::Error; };          // gamma-function / series parameter poles
struct ParameterError : Error { using Error::Error; };     // domain violations
struct ConvergenceError : Error { using Error::Error; };   // series or iteration budget exhausted
struct CutError : Error { using Error::Error; };           // argument on a branch cut
struct QuadratureError : Error { using Error::Error; };    // integration did not converge
struct SupportError : Error { using Error::Error; };       // evaluation point in or near a measure's support
struct ZeroError : Error { using Error::Error; };          // singular point of a rational map
struct BranchError : Error { using Error::Error; };        // too close to a branch point of a root
struct SectorError : Error { using Error::Error; };        // hypergeometric root formula not applicable here

} // namespace gstlab
