#pragma once

#include "dynheight/polyspec.hpp"

#include <stdexcept>
#include <string>

namespace dynheight {

/// Syntax error with the byte offset of the offending token.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

/// Rational literal: `-3`, `1/2`, `+7`.
mpq_class parse_rational(const std::string& text);

/// Polynomial in z, either as an expression (`z^3 - 3*z + 1/2`, with
/// + - * / ^ and parentheses; division only by nonzero constants) or as a
/// comma-separated coefficient list in descending degree (`1,0,-3,1/2`).
PolySpec parse_polynomial(const std::string& text);

/// Point of Q or Q(sqrt(D)): an expression over rationals and sqrt(r)
/// terms, e.g. `2`, `-1/2`, `1/2 + 3*sqrt(-2)`, `sqrt(5)/2`.
QuadExt parse_point(const std::string& text);

} // namespace dynheight
