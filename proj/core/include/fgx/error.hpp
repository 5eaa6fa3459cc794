#pragma once

#include <stdexcept>
#include <string>

namespace fgx {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph or generator size out of the operation's domain (e.g. n = 0).
struct InvalidSizeError : Error {
    using Error::Error;
};

/// Input outside an operation's supported shape (e.g. composite labels fed
/// to the path-enumeration oracle).
struct UnsupportedInputError : Error {
    using Error::Error;
};

/// An expression violated a structural contract (duplicate monomial on
/// expansion signals a generator bug).
struct InvalidExpressionError : Error {
    using Error::Error;
};

/// Text does not conform to the expression grammar.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

/// Evaluation hit a term with no assigned value.
struct UnboundTermError : Error {
    using Error::Error;
};

/// A reduction's structural precondition does not hold.
struct ReductionError : Error {
    using Error::Error;
};

/// Schedule length does not match the graph, or no reductions are needed.
struct InvalidScheduleError : Error {
    using Error::Error;
};

/// A decomposition strategy returned a vertex outside its interval.
struct InvalidChoiceError : Error {
    using Error::Error;
};

/// GD part count outside [2, n-1].
struct InvalidPartCountError : Error {
    using Error::Error;
};

/// 128-bit count arithmetic overflowed.
struct RangeError : Error {
    using Error::Error;
};

/// Generation refused: output size would be exponential past the cap.
struct SizeGuardError : Error {
    using Error::Error;
};

}  // namespace fgx
