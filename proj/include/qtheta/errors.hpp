#pragma once

#include <stdexcept>
#include <string>

namespace qtheta {

// Base class for all engine errors. Everything the engine can refuse to do
// is reported through one of the subclasses below; plain std::logic_error
// is reserved for internal invariant violations (bugs).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact division in Z[w] has no quotient.
class NotDivisible : public Error {
public:
    using Error::Error;
};

// Series inversion with a non-unit leading coefficient.
class NotInvertible : public Error {
public:
    using Error::Error;
};

// Inversion of the (truncated) zero series.
class ZeroSeries : public Error {
public:
    using Error::Error;
};

// twist() on a series with fractional exponents.
class NonIntegerExponents : public Error {
public:
    using Error::Error;
};

// Coefficient query or comparison beyond the certified order.
class OrderExceeded : public Error {
public:
    using Error::Error;
};

// Monomial access beyond the certified window.
class WindowExceeded : public Error {
public:
    using Error::Error;
};

// A Laurent operation whose output window cannot be certified.
class WindowUnderflow : public Error {
public:
    using Error::Error;
};

// Pochhammer product whose first factor has nonpositive q-valuation.
class Divergent : public Error {
public:
    using Error::Error;
};

// Catalog lookup miss.
class UnknownIdentity : public Error {
public:
    using Error::Error;
};

// DSL parse failure; carries a source position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t pos) : Error(msg), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace qtheta
