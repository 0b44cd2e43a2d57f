#pragma once

#include <stdexcept>
#include <string>

namespace jgeom {

/// Broad failure classes; the CLI maps each one to an exit code.
enum class ErrorClass {
    validation,   // malformed or out-of-contract input
    precondition, // well-formed input violating a mathematical precondition
    numerical,    // an iterative kernel failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
    ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

namespace detail {
template <ErrorClass C>
class ErrorOf : public Error {
public:
    explicit ErrorOf(const std::string& what) : Error(C, what) {}
};
} // namespace detail

// validation
struct ParseError : detail::ErrorOf<ErrorClass::validation> { using ErrorOf::ErrorOf; };
struct HermitianViolation : detail::ErrorOf<ErrorClass::validation> { using ErrorOf::ErrorOf; };
struct DimensionMismatch : detail::ErrorOf<ErrorClass::validation> { using ErrorOf::ErrorOf; };
struct ProjectionViolation : detail::ErrorOf<ErrorClass::validation> { using ErrorOf::ErrorOf; };
struct TangentViolation : detail::ErrorOf<ErrorClass::validation> { using ErrorOf::ErrorOf; };

// precondition
struct PreconditionViolation : detail::ErrorOf<ErrorClass::precondition> { using ErrorOf::ErrorOf; };
struct DomainViolation : detail::ErrorOf<ErrorClass::precondition> { using ErrorOf::ErrorOf; };
struct RankMismatch : detail::ErrorOf<ErrorClass::precondition> { using ErrorOf::ErrorOf; };
struct NotScalarPair : detail::ErrorOf<ErrorClass::precondition> { using ErrorOf::ErrorOf; };
struct AntipodalPair : detail::ErrorOf<ErrorClass::precondition> { using ErrorOf::ErrorOf; };

// numerical
struct NumericalFailure : detail::ErrorOf<ErrorClass::numerical> { using ErrorOf::ErrorOf; };

} // namespace jgeom
