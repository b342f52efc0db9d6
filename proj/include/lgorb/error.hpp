#ifndef LGORB_ERROR_HPP
#define LGORB_ERROR_HPP

// Error taxonomy for the lgorb library.  Every failure the library can
// diagnose is thrown as an Error carrying a machine-checkable kind plus a
// human-readable message; nothing is ever silently clamped or approximated.

#include <stdexcept>
#include <string>

namespace lgorb {

enum class ErrorKind {
    // arithmetic / field tower
    InputTooLarge,           // conductor lcm or similar blew past a hard cap
    NotInvertible,           // inverse of zero, singular matrix, or a
                             // polynomial without loop/chain/Fermat shape
    // weights and polynomial shape
    NoUniqueWeights,         // quasihomogeneous weight system absent/ambiguous
    DegeneratePolynomial,    // failed a necessary nondegeneracy condition
    // group engine
    GroupCapExceeded,        // closure grew beyond the element cap
    BadGroupInput,           // generator violates a structural precondition
    // series / tables
    NonIntegralCoefficient,  // an averaged dimension was not a nonneg integer
    IllDefinedIndex,         // signed count requested but p-q is not integral
    NonPolynomialQuotient,   // an exact polynomial division left a remainder
    InvalidDivisor,          // closed-form family called with l not dividing n
    // oracle
    NotFermat,               // oracle needs a sum of pure powers
    NotDiagonal,             // oracle needs a diagonal symmetry group
    EnumerationTooLarge,     // oracle basis-times-group count over budget
    // input handling
    ParseError,              // malformed problem file / scalar expression
    // should-not-happen consistency failures (fail loudly, never patch over)
    InternalError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InputTooLarge:          return "InputTooLarge";
        case ErrorKind::NotInvertible:          return "NotInvertible";
        case ErrorKind::NoUniqueWeights:        return "NoUniqueWeights";
        case ErrorKind::DegeneratePolynomial:   return "DegeneratePolynomial";
        case ErrorKind::GroupCapExceeded:       return "GroupCapExceeded";
        case ErrorKind::BadGroupInput:          return "BadGroupInput";
        case ErrorKind::NonIntegralCoefficient: return "NonIntegralCoefficient";
        case ErrorKind::IllDefinedIndex:        return "IllDefinedIndex";
        case ErrorKind::NonPolynomialQuotient:  return "NonPolynomialQuotient";
        case ErrorKind::InvalidDivisor:         return "InvalidDivisor";
        case ErrorKind::NotFermat:              return "NotFermat";
        case ErrorKind::NotDiagonal:            return "NotDiagonal";
        case ErrorKind::EnumerationTooLarge:    return "EnumerationTooLarge";
        case ErrorKind::ParseError:             return "ParseError";
        case ErrorKind::InternalError:          return "InternalError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind),
          message_(message) {}

    ErrorKind kind() const noexcept { return kind_; }

    // The message without the kind prefix, for callers that re-wrap.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

// Invariant check used for conditions that are theorems of the underlying
// algebra: a violation means a bug, so it must surface, never be smoothed.
inline void internal_check(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::InternalError, what);
}

} // namespace lgorb

#endif // LGORB_ERROR_HPP
