#pragma once

#include <stdexcept>
#include <string>

namespace ebnd {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// spectrum
struct EmptySpectrum : Error { using Error::Error; };
struct NonFiniteLevel : Error { using Error::Error; };
struct NonMonotoneGenerator : Error { using Error::Error; };
struct TooFewLevels : Error { using Error::Error; };

// gibbs
struct BetaTooSmall : Error { using Error::Error; };
struct TargetEnergyUnattainable : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };

// bounds
struct DomainError : Error { using Error::Error; };
struct ArgumentBelowGap : Error { using Error::Error; };
struct InternalGapViolation : Error { using Error::Error; };

// distributions
struct IncompatibleSupport : Error { using Error::Error; };

// linear algebra / quantum
struct NonHermitianInput : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// input parsing
struct ParseError : Error { using Error::Error; };

}  // namespace ebnd
