#pragma once

#include <stdexcept>
#include <string>

namespace sullivan {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed values: mismatched generator tables, inhomogeneous
// differentials, bad degrees, duplicate names.
struct StructuralError : Error {
    using Error::Error;
};

// A precondition documented on an operation was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

// Text input could not be parsed. Positions are 1-based.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" +
                std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

// A model admits no two-stage decomposition.
struct NotTwoStageError : Error {
    using Error::Error;
};

// A computation would exceed the configured basis-size cap.
struct ResourceCapError : Error {
    int degree;                       // first degree where the cap is hit
    unsigned long long requested;     // cumulative basis size at that point
    ResourceCapError(int degree_, unsigned long long requested_,
                     unsigned long long cap)
        : Error("basis-size cap exceeded at degree " + std::to_string(degree_) +
                " (" + std::to_string(requested_) + " > cap " +
                std::to_string(cap) + ")"),
          degree(degree_), requested(requested_) {}
};

// An internal invariant failed; indicates a bug or corrupted input.
struct InternalError : Error {
    using Error::Error;
};

} // namespace sullivan
