#pragma once

#include <stdexcept>
#include <string>

namespace puiseux {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thrown by the polynomial text parser; `position` is a byte offset into the input
struct SyntaxError : Error {
    SyntaxError(std::size_t position, const std::string& what_arg)
        : Error("syntax error at offset " + std::to_string(position) + ": " + what_arg),
          position(position) {}
    std::size_t position;
};

struct NegativeExponent : Error {
    using Error::Error;
};

struct ImaginaryInExactBackend : Error {
    ImaginaryInExactBackend() : Error("imaginary unit 'i' requires the numeric backend") {}
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

// exact backend only: a nonconstant factor with no rational root remains.
// `factor` holds the offending polynomial rendered as text so the caller can
// report which branch needs the numeric backend.
struct NonRationalRoot : Error {
    explicit NonRationalRoot(std::string factor_text, std::string context = {})
        : Error("no rational root of factor " + factor_text +
                (context.empty() ? std::string{} : " (" + context + ")")),
          factor(std::move(factor_text)),
          context(std::move(context)) {}
    std::string factor;
    std::string context;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NegativeResultExponent : Error {
    using Error::Error;
};

struct ConstantTermNonzero : Error {
    using Error::Error;
};

struct FractionalExponent : Error {
    using Error::Error;
};

struct EmptySegment : Error {
    EmptySegment() : Error("segment supports no points of the polynomial") {}
};

struct InconsistentState : Error {
    using Error::Error;
};

struct NotRegular : Error {
    using Error::Error;
};

struct AmbiguousBranch : Error {
    using Error::Error;
};

struct NoSolution : Error {
    using Error::Error;
};

}  // namespace puiseux
