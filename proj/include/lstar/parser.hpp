#pragma once

#include <stdexcept>
#include <string>

#include "lstar/formula.hpp"

namespace lstar {

/// Raised on any syntax error; `offset` is the byte position in the input.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::string msg, std::size_t off)
      : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

/// Parses a complete term. Concrete syntax:
///   0 | 1 | <decimal> | <ident> | <fn>(t,...) | <coded-name>(t,...)
/// A decimal literal n >= 2 is shorthand for the numeral term of n.
TermPtr parse_term(const std::string& text);

/// Parses a complete formula. Atoms are `t = u` and `t <= u` (with `t < u`
/// shorthand for `t <= sub(u,1)`); connectives `~f`, `f & g`, `f | g`,
/// `f -> g`, `f <-> g` with explicit parentheses around nested connectives;
/// quantifiers `A x. f`, `E x. f`, `A x <= t. f`, `E x <= t. f`. The macros
/// mult(x,y,z) and addrel(x,y,z) expand to their defining formulas.
FormulaPtr parse_formula(const std::string& text);

}  // namespace lstar
