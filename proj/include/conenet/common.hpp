#pragma once

#include <stdexcept>
#include <string>

namespace conenet {

// Global boundary-classification tolerance. Margin values in (-kGeoTol, kGeoTol)
// are treated as "on"; ties are removed by the perturbation pass, not by
// branching on them downstream.
inline constexpr double kGeoTol = 1e-9;

// Tolerance for algebraic degeneracy (singular systems, zero separations).
inline constexpr double kDegenTol = 1e-12;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input validation failures (CLI exit code 1).
struct ValidationError : Error { using Error::Error; };
struct DegeneratePolytope : ValidationError { using ValidationError::ValidationError; };
struct DegenerateVertex : ValidationError { using ValidationError::ValidationError; };
struct InvalidEpsilon : ValidationError { using ValidationError::ValidationError; };
struct EmptyInput : ValidationError { using ValidationError::ValidationError; };
struct UnhittableRange : ValidationError { using ValidationError::ValidationError; };
struct UncoverablePoint : ValidationError { using ValidationError::ValidationError; };
struct CapExceeded : ValidationError { using ValidationError::ValidationError; };

// Internal invariant breaches (CLI exit code 3).
struct InvariantError : Error { using Error::Error; };
struct PerturbationFailed : InvariantError { using InvariantError::InvariantError; };
struct FlattenFailed : InvariantError { using InvariantError::InvariantError; };
struct ProjectionMiss : InvariantError { using InvariantError::InvariantError; };
struct NotATriangulation : InvariantError { using InvariantError::InvariantError; };
struct NetVerificationFailed : InvariantError { using InvariantError::InvariantError; };
struct NonTermination : InvariantError { using InvariantError::InvariantError; };

} // namespace conenet
