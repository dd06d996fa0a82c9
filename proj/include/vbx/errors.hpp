#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vbx {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grammar or validation failure; position is a 0-based byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos + 1)), position(pos) {}
    std::size_t position;
};

// Precondition violations on otherwise well-formed input.
struct InvalidArgument : Error {
    using Error::Error;
};

// order_of is undefined for the zero expression.
struct ZeroExpression : InvalidArgument {
    ZeroExpression() : InvalidArgument("order is undefined for the zero expression") {}
};

// An identically-zero denominator was produced during normalization.
struct DivisionByZero : InvalidArgument {
    DivisionByZero() : InvalidArgument("division by an identically-zero expression") {}
};

// fiber_potential requires a symmetric component jacobian.
struct SymmetryViolation : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// The source form fails the Helmholtz test; message carries the nonzero form.
struct NotVariational : Error {
    using Error::Error;
};

// Input is outside the supported class of an operation.
struct NotSupported : Error {
    using Error::Error;
};

// Radial homotopy needs polynomial coefficients.
struct NonPolynomial : NotSupported {
    using NotSupported::NotSupported;
};

// Second-order decomposition needs acceleration-affine components.
struct NotAffine : NotSupported {
    using NotSupported::NotSupported;
};

// A structural invariant that should hold by construction failed.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace vbx
