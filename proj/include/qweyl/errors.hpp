#pragma once

#include <stdexcept>
#include <string>

namespace qweyl {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Text could not be parsed (scalar text, rationals, documents).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Two operands live on different annuli / windows / levels.
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Division by an exact zero, or a result that cannot exist.
struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

// A value became indistinguishable from zero where a unit was required,
// or a division consumed the surviving precision.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// The dominant-monomial unit test failed.
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& msg) : Error(msg) {}
};

// Endomorphism parameters violate the annulus admissibility conditions.
struct AdmissibilityError : Error {
    explicit AdmissibilityError(const std::string& msg) : Error(msg) {}
};

// A deformation plan does not match the operator it is applied to.
struct PlanMismatch : Error {
    explicit PlanMismatch(const std::string& msg) : Error(msg) {}
};

// The order-K decay certificate required by the confluence transform failed.
struct NotConvergentAtOrderK : Error {
    explicit NotConvergentAtOrderK(const std::string& msg) : Error(msg) {}
};

// log(q) does not converge for the supplied q.
struct LogDivergent : Error {
    explicit LogDivergent(const std::string& msg) : Error(msg) {}
};

} // namespace qweyl
